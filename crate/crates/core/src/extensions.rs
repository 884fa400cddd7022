//! Central extensions of 3-LieDer pairs and extensions of derivation pairs.
//!
//! Two complexes appear here. Central extensions of pairs are classified in
//! the pair complex with trivial coefficients; extending a pair of derivations
//! over a fixed central extension of 3-Lie algebras is decided in the plain
//! complex `(C*(L, M), d)`.

use crate::algebra::{derivation_report, DerModule, LieDerPair, Representation, ThreeLieAlgebra};
use crate::basis::PairIndex;
use crate::cohomology::{cohomologous, is_cocycle, plain_preimage};
use crate::complex::{Cochain, PairCochain};
use crate::error::{Error, Result};
use crate::linalg::LinearMap;
use crate::report::DEFAULT_MAX_VIOLATIONS;
use crate::scalar::{self, Scalar};

/// A left inverse of an injective map.
fn left_inverse(i: &LinearMap) -> Result<LinearMap> {
    let it = i.transpose();
    let gram = it.compose(i)?;
    let inv = gram
        .inverse()
        .ok_or_else(|| Error::invalid("inclusion is not injective"))?;
    inv.compose(&it)
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = scalar::zeros(n);
    v[i] = scalar::one();
    v
}

/// `0 → M → L̂ → L → 0` with `M` central, as 3-Lie algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieExtension {
    base: ThreeLieAlgebra,
    total: ThreeLieAlgebra,
    inclusion: LinearMap,
    projection: LinearMap,
}

impl LieExtension {
    /// Checks exactness, centrality and that `p` is a homomorphism.
    pub fn new(
        base: ThreeLieAlgebra,
        total: ThreeLieAlgebra,
        inclusion: LinearMap,
        projection: LinearMap,
    ) -> Result<Self> {
        let (n, t) = (base.dim(), total.dim());
        let m = inclusion.cols();
        if inclusion.rows() != t || projection.rows() != n || projection.cols() != t {
            return Err(Error::dim("inclusion and projection do not fit the algebras"));
        }
        if n + m != t {
            return Err(Error::dim(format!(
                "total dimension {t} is not {n} + {m}"
            )));
        }
        if !projection.compose(&inclusion)?.is_zero() {
            return Err(Error::invalid("p∘i is not zero"));
        }
        if inclusion.rank() != m {
            return Err(Error::invalid("inclusion is not injective"));
        }
        if projection.rank() != n {
            return Err(Error::invalid("projection is not surjective"));
        }
        for a in 0..m {
            let ia = inclusion.column(a);
            for x in 0..t {
                for y in 0..t {
                    if !scalar::is_zero_vec(&total.bracket(&ia, &unit(t, x), &unit(t, y))) {
                        return Err(Error::invalid(format!(
                            "i(m{}) is not central: bracket with e{} and e{} is nonzero",
                            a + 1,
                            x + 1,
                            y + 1
                        )));
                    }
                }
            }
        }
        for x in 0..t {
            for y in x + 1..t {
                for z in y + 1..t {
                    let lhs = projection.apply(&total.bracket_basis(x, y, z));
                    let rhs = base.bracket(&projection.column(x), &projection.column(y), &projection.column(z));
                    if lhs != rhs {
                        return Err(Error::invalid(format!(
                            "projection is not a homomorphism at ({}, {}, {})",
                            x + 1,
                            y + 1,
                            z + 1
                        )));
                    }
                }
            }
        }
        Ok(Self {
            base,
            total,
            inclusion,
            projection,
        })
    }

    /// `L ⊕ M` with bracket `([x,y,z], ψ(x,y,z))`; `ψ` must be a totally
    /// antisymmetric plain 2-cocycle with trivial coefficients.
    pub fn from_cocycle(base: &ThreeLieAlgebra, psi: &Cochain) -> Result<Self> {
        let total = twisted_algebra(base, psi)?;
        let report = total.validate(DEFAULT_MAX_VIOLATIONS);
        if !report.is_ok() {
            return Err(Error::Violated {
                what: "fundamental identity of the extension",
                report,
            });
        }
        let (n, m) = (base.dim(), psi.mod_dim());
        Self::new(base.clone(), total, canonical_inclusion(n, m), canonical_projection(n, m))
    }

    pub fn base(&self) -> &ThreeLieAlgebra {
        &self.base
    }

    pub fn total(&self) -> &ThreeLieAlgebra {
        &self.total
    }

    pub fn inclusion(&self) -> &LinearMap {
        &self.inclusion
    }

    pub fn projection(&self) -> &LinearMap {
        &self.projection
    }

    pub fn fiber_dim(&self) -> usize {
        self.inclusion.cols()
    }

    /// Checks `p∘s = Id`.
    pub fn check_section(&self, sec: &LinearMap) -> Result<()> {
        let n = self.base.dim();
        if sec.rows() != self.total.dim() || sec.cols() != n {
            return Err(Error::dim("section has the wrong shape"));
        }
        if self.projection.compose(sec)? != LinearMap::identity(n) {
            return Err(Error::invalid("section is not a right inverse of the projection"));
        }
        Ok(())
    }

    /// Coordinates in `M` of a vector of `i(M)`.
    fn fiber_coords(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        let inv = left_inverse(&self.inclusion)?;
        let a = inv.apply(v);
        if self.inclusion.apply(&a) != v {
            return Err(Error::invalid("value does not lie in the image of the inclusion"));
        }
        Ok(a)
    }

    /// `ψ(x, y, z) = [s x, s y, s z] − s[x, y, z]` in `M` coordinates.
    pub fn psi(&self, sec: &LinearMap) -> Result<Cochain> {
        self.check_section(sec)?;
        let n = self.base.dim();
        let m = self.fiber_dim();
        let pairs = PairIndex::new(n);
        let mut psi = Cochain::zero(2, n, m)?;
        for code in 0..pairs.len() {
            let (x, y) = pairs.pair(code);
            for z in 0..n {
                let mut v = self.total.bracket(&sec.column(x), &sec.column(y), &sec.column(z));
                let s_br = sec.apply(&self.base.bracket_basis(x, y, z));
                for (a, b) in v.iter_mut().zip(&s_br) {
                    *a -= b;
                }
                psi.set(&[code], z, self.fiber_coords(&v)?)?;
            }
        }
        Ok(psi)
    }
}

fn canonical_inclusion(n: usize, m: usize) -> LinearMap {
    LinearMap::from_fn(n + m, m, |r, c| if r == n + c { scalar::one() } else { scalar::zero() })
}

fn canonical_projection(n: usize, m: usize) -> LinearMap {
    LinearMap::from_fn(n, n + m, |r, c| if r == c { scalar::one() } else { scalar::zero() })
}

/// The canonical section `x ↦ (x, 0)` of `L ⊕ M → L`.
pub fn canonical_section(n: usize, m: usize) -> LinearMap {
    LinearMap::from_fn(n + m, n, |r, c| if r == c { scalar::one() } else { scalar::zero() })
}

fn twisted_algebra(base: &ThreeLieAlgebra, psi: &Cochain) -> Result<ThreeLieAlgebra> {
    psi.require_degree(2)?;
    let n = base.dim();
    if psi.alg_dim() != n {
        return Err(Error::dim("ψ is defined on an algebra of another dimension"));
    }
    if !psi.is_totally_antisymmetric() {
        return Err(Error::invalid("ψ is not totally antisymmetric"));
    }
    let m = psi.mod_dim();
    let pairs = PairIndex::new(n);
    let mut constants = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                let mut v = base.bracket_basis(x, y, z);
                v.extend_from_slice(psi.value(&[pairs.code(x, y).expect("x < y")], z));
                constants.push(([x, y, z], v));
            }
        }
    }
    ThreeLieAlgebra::new_unchecked(n + m, constants)
}

/// A central extension `0 → (M, φ_M) → (L̂, φ̂) → (L, φ_L) → 0` of 3-LieDer pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralExtension {
    base: LieDerPair,
    fiber: DerModule,
    total: LieDerPair,
    lie: LieExtension,
}

impl CentralExtension {
    /// Checks the underlying 3-Lie extension and that `i`, `p` intertwine the derivations.
    pub fn new(
        base: LieDerPair,
        fiber_phi: LinearMap,
        total: LieDerPair,
        inclusion: LinearMap,
        projection: LinearMap,
    ) -> Result<Self> {
        let fiber = DerModule::trivial(&base, fiber_phi)?;
        let lie = LieExtension::new(
            base.algebra().clone(),
            total.algebra().clone(),
            inclusion,
            projection,
        )?;
        if total.phi().compose(lie.inclusion())? != lie.inclusion().compose(fiber.phi_m())? {
            return Err(Error::invalid("total derivation does not restrict to φ_M on the fiber"));
        }
        if lie.projection().compose(total.phi())? != base.phi().compose(lie.projection())? {
            return Err(Error::invalid("total derivation does not project to φ_L"));
        }
        Ok(Self {
            base,
            fiber,
            total,
            lie,
        })
    }

    pub fn base(&self) -> &LieDerPair {
        &self.base
    }

    pub fn fiber(&self) -> &DerModule {
        &self.fiber
    }

    pub fn total(&self) -> &LieDerPair {
        &self.total
    }

    pub fn inclusion(&self) -> &LinearMap {
        self.lie.inclusion()
    }

    pub fn projection(&self) -> &LinearMap {
        self.lie.projection()
    }

    /// The underlying extension of 3-Lie algebras.
    pub fn lie(&self) -> &LieExtension {
        &self.lie
    }

    pub fn canonical_section(&self) -> LinearMap {
        canonical_section(self.base.dim(), self.fiber.mod_dim())
    }
}

fn check_fiber(pair: &LieDerPair, fiber: &DerModule) -> Result<()> {
    if fiber.rep().alg_dim() != pair.dim() {
        return Err(Error::dim("fiber module is for an algebra of another dimension"));
    }
    if !fiber.rep().is_trivial() {
        return Err(Error::invalid("the fiber of a central extension must carry the trivial action"));
    }
    Ok(())
}

/// `L ⊕ M` with bracket `([x,y,z], ψ(x,y,z))` and derivation
/// `(x, m) ↦ (φ_L x, φ_M m + χ x)`.
///
/// Fails with the first violated identity of the would-be pair unless
/// `(ψ, χ)` is a 2-cocycle.
pub fn build_central_extension(
    pair: &LieDerPair,
    fiber: &DerModule,
    psi: &Cochain,
    chi: &LinearMap,
) -> Result<CentralExtension> {
    check_fiber(pair, fiber)?;
    let (n, m) = (pair.dim(), fiber.mod_dim());
    if psi.mod_dim() != m || chi.rows() != m || chi.cols() != n {
        return Err(Error::dim("(ψ, χ) does not map into the fiber"));
    }
    let algebra = twisted_algebra(pair.algebra(), psi)?;
    let mut phi = pair.phi().direct_sum(fiber.phi_m());
    for r in 0..m {
        for c in 0..n {
            phi.set(n + r, c, chi.get(r, c).clone());
        }
    }
    let mut report = algebra.validate(DEFAULT_MAX_VIOLATIONS);
    if !report.is_ok() {
        return Err(Error::Violated {
            what: "fundamental identity of the extension",
            report,
        });
    }
    report = derivation_report(&algebra, &phi, DEFAULT_MAX_VIOLATIONS)?;
    if !report.is_ok() {
        return Err(Error::Violated {
            what: "Leibniz rule of the extended derivation",
            report,
        });
    }
    let total = LieDerPair::new(algebra, phi)?;
    CentralExtension::new(
        pair.clone(),
        fiber.phi_m().clone(),
        total,
        canonical_inclusion(n, m),
        canonical_projection(n, m),
    )
}

/// `(ψ, χ)` for the section `s`:
/// `ψ = [s·, s·, s·] − s[·,·,·]`, `χ = φ̂ s − s φ_L`, in `M` coordinates.
pub fn extract_cocycle(ext: &CentralExtension, sec: &LinearMap) -> Result<PairCochain> {
    let psi = ext.lie.psi(sec)?;
    let n = ext.base.dim();
    let diff = ext.total.phi().compose(sec)?.sub(&sec.compose(ext.base.phi())?)?;
    let cols: Vec<Vec<Scalar>> = (0..n)
        .map(|x| ext.lie.fiber_coords(&diff.column(x)))
        .collect::<Result<_>>()?;
    let m = ext.fiber.mod_dim();
    let chi = LinearMap::from_fn(m, n, |r, c| cols[c][r].clone());
    PairCochain::degree2(psi, &chi)
}

/// Outcome of comparing two extension cocycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub equivalent: bool,
    /// `v` with `(ψ, χ) − (ψ′, χ′) = ∂v`.
    pub witness: Option<LinearMap>,
    /// `η(x, m) = (x, m + v x)` from the first extension to the second.
    pub isomorphism: Option<LinearMap>,
}

/// `η(x, m) = (x, m + v x)` on `L ⊕ M`.
pub fn eta(v: &LinearMap) -> LinearMap {
    let (m, n) = (v.rows(), v.cols());
    let mut e = LinearMap::identity(n + m);
    for r in 0..m {
        for c in 0..n {
            e.set(n + r, c, v.get(r, c).clone());
        }
    }
    e
}

/// Whether `g: L̂₁ → L̂₂` is an isomorphism of pairs commuting with `i` and `p`.
pub fn is_extension_isomorphism(e1: &CentralExtension, e2: &CentralExtension, g: &LinearMap) -> Result<bool> {
    let Some(ginv) = g.inverse() else {
        return Ok(false);
    };
    if e1.total.algebra().transport(g)? != *e2.total.algebra() {
        return Ok(false);
    }
    if g.compose(e1.total.phi())?.compose(&ginv)? != *e2.total.phi() {
        return Ok(false);
    }
    Ok(g.compose(e1.inclusion())? == *e2.inclusion() && e2.projection().compose(g)? == *e1.projection())
}

/// Decides whether two extension cocycles give isomorphic extensions.
pub fn classify_extensions(
    pair: &LieDerPair,
    fiber: &DerModule,
    pc1: &PairCochain,
    pc2: &PairCochain,
) -> Result<Classification> {
    check_fiber(pair, fiber)?;
    for pc in [pc1, pc2] {
        if pc.degree() != 2 {
            return Err(Error::dim("extension cocycles have degree 2"));
        }
        if !is_cocycle(pair, fiber, pc)? {
            return Err(Error::invalid("input is not a 2-cocycle"));
        }
    }
    let Some(v) = cohomologous(pair, fiber, pc1, pc2)? else {
        return Ok(Classification {
            equivalent: false,
            witness: None,
            isomorphism: None,
        });
    };
    let v = v.f().to_linear_map()?;
    let g = eta(&v);
    let split = |pc: &PairCochain| -> Result<CentralExtension> {
        let chi = pc.fbar().expect("degree 2").to_linear_map()?;
        build_central_extension(pair, fiber, pc.f(), &chi)
    };
    let (e1, e2) = (split(pc1)?, split(pc2)?);
    if !is_extension_isomorphism(&e1, &e2, &g)? {
        return Err(Error::invalid("cohomology witness does not induce an isomorphism"));
    }
    Ok(Classification {
        equivalent: true,
        witness: Some(v),
        isomorphism: Some(g),
    })
}

fn check_derivation_pair(ext: &LieExtension, phi_l: &LinearMap, phi_m: &LinearMap) -> Result<()> {
    let report = derivation_report(ext.base(), phi_l, DEFAULT_MAX_VIOLATIONS)?;
    if !report.is_ok() {
        return Err(Error::Violated {
            what: "derivation of the base",
            report,
        });
    }
    let m = ext.fiber_dim();
    if phi_m.rows() != m || phi_m.cols() != m {
        return Err(Error::dim(format!("φ_M must be {m}x{m}")));
    }
    Ok(())
}

/// `Ob(x,y,z) = φ_M ψ(x,y,z) − ψ(φ_L x,y,z) − ψ(x,φ_L y,z) − ψ(x,y,φ_L z)`.
pub fn derivation_obstruction(
    ext: &LieExtension,
    phi_l: &LinearMap,
    phi_m: &LinearMap,
    sec: &LinearMap,
) -> Result<Cochain> {
    check_derivation_pair(ext, phi_l, phi_m)?;
    let psi = ext.psi(sec)?;
    let n = ext.base().dim();
    let pairs = PairIndex::new(n);
    let mut ob = psi.post_compose(phi_m)?;
    let phi_cols: Vec<Vec<Scalar>> = (0..n).map(|c| phi_l.column(c)).collect();
    for code in 0..pairs.len() {
        let (x, y) = pairs.pair(code);
        for z in 0..n {
            let ex = unit(n, x);
            let ey = unit(n, y);
            let ez = unit(n, z);
            let mut v = psi.eval(&[(phi_cols[x].clone(), ey.clone())], &ez)?;
            let t2 = psi.eval(&[(ex.clone(), phi_cols[y].clone())], &ez)?;
            let t3 = psi.eval(&[(ex, ey)], &phi_cols[z])?;
            for ((a, b), c) in v.iter_mut().zip(&t2).zip(&t3) {
                *a += b + c;
            }
            let slot = ob.value_mut(&[code], z);
            for (o, a) in slot.iter_mut().zip(&v) {
                *o -= a;
            }
        }
    }
    Ok(ob)
}

/// A derivation of `L̂` extending `(φ_L, φ_M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationExtension {
    /// `λ: L → M` with `d λ = Ob`.
    pub lambda: LinearMap,
    /// `φ̂(s x + i a) = s φ_L x + i λ x + i φ_M a`.
    pub phi_total: LinearMap,
}

/// `φ̂ = s φ_L p + i λ p + i φ_M i⁺ (Id − s p)`.
pub fn assemble_extension(
    ext: &LieExtension,
    phi_l: &LinearMap,
    phi_m: &LinearMap,
    sec: &LinearMap,
    lambda: &LinearMap,
) -> Result<LinearMap> {
    let (i, p) = (ext.inclusion(), ext.projection());
    let t = ext.total().dim();
    let fiber_part = LinearMap::identity(t).sub(&sec.compose(p)?)?;
    let a = sec.compose(phi_l)?.compose(p)?;
    let b = i.compose(lambda)?.compose(p)?;
    let c = i.compose(phi_m)?.compose(&left_inverse(i)?)?.compose(&fiber_part)?;
    a.add(&b)?.add(&c)
}

/// Extends `(φ_L, φ_M)` to a derivation of `L̂`, or `None` when the
/// obstruction class is nonzero.
pub fn extend_derivation_pair(
    ext: &LieExtension,
    phi_l: &LinearMap,
    phi_m: &LinearMap,
    sec: &LinearMap,
) -> Result<Option<DerivationExtension>> {
    let ob = derivation_obstruction(ext, phi_l, phi_m, sec)?;
    let rep = Representation::trivial(ext.base().dim(), ext.fiber_dim());
    let Some(lambda) = plain_preimage(ext.base(), &rep, &ob)? else {
        return Ok(None);
    };
    let lambda = lambda.to_linear_map()?;
    let phi_total = assemble_extension(ext, phi_l, phi_m, sec, &lambda)?;
    let report = derivation_report(ext.total(), &phi_total, DEFAULT_MAX_VIOLATIONS)?;
    if !report.is_ok() {
        return Err(Error::Violated {
            what: "assembled derivation",
            report,
        });
    }
    let (i, p) = (ext.inclusion(), ext.projection());
    if phi_total.compose(i)? != i.compose(phi_m)? || p.compose(&phi_total)? != phi_l.compose(p)? {
        return Err(Error::invalid("assembled derivation does not intertwine i and p"));
    }
    Ok(Some(DerivationExtension { lambda, phi_total }))
}
