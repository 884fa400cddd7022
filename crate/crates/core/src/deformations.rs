//! Truncated formal deformations `μ_t = μ + Σ tⁱ μᵢ`, `φ_t = φ_L + Σ tⁱ φᵢ`.

use rayon::prelude::*;

use crate::algebra::{DerModule, LieDerPair, ThreeLieAlgebra};
use crate::basis::PairIndex;
use crate::cohomology::{is_coboundary, is_cocycle};
use crate::complex::{bracket, pair_d_matrix, Cochain, PairCochain};
use crate::error::{Error, Result};
use crate::linalg::{solve, LinearMap, QMatrix, SparseVec};
use crate::report::ValidationReport;
use crate::scalar::{self, Scalar};

/// Dense trilinear map `T[x][y][z] ∈ L`, flattened.
struct Tensor {
    n: usize,
    data: Vec<Vec<Scalar>>,
}

impl Tensor {
    fn from_cochain(mu: &Cochain) -> Self {
        let n = mu.alg_dim();
        let pairs = PairIndex::new(n);
        let mut data = vec![scalar::zeros(n); n * n * n];
        for x in 0..n {
            for y in 0..n {
                let Some((code, neg)) = pairs.wedge_basis(x, y) else {
                    continue;
                };
                for z in 0..n {
                    let v = mu.value(&[code], z);
                    data[(x * n + y) * n + z] = if neg { v.iter().map(|a| -a).collect() } else { v.to_vec() };
                }
            }
        }
        Self { n, data }
    }

    fn basis(&self, x: usize, y: usize, z: usize) -> &[Scalar] {
        &self.data[(x * self.n + y) * self.n + z]
    }

    /// `T(e_x, e_y, v)`.
    fn last(&self, x: usize, y: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = scalar::zeros(self.n);
        for (z, c) in v.iter().enumerate() {
            if !num_traits::Zero::is_zero(c) {
                scalar::add_scaled(&mut out, c, self.basis(x, y, z));
            }
        }
        out
    }

    /// `T(u, v, w)` for arbitrary vectors.
    fn eval(&self, u: &[Scalar], v: &[Scalar], w: &[Scalar]) -> Vec<Scalar> {
        let mut out = scalar::zeros(self.n);
        for (x, a) in u.iter().enumerate() {
            if num_traits::Zero::is_zero(a) {
                continue;
            }
            for (y, b) in v.iter().enumerate() {
                if num_traits::Zero::is_zero(b) {
                    continue;
                }
                let ab = a * b;
                for (z, c) in w.iter().enumerate() {
                    if !num_traits::Zero::is_zero(c) {
                        scalar::add_scaled(&mut out, &(&ab * c), self.basis(x, y, z));
                    }
                }
            }
        }
        out
    }
}

/// Totally antisymmetric cochain from its values on increasing triples.
fn cochain_from_triples(n: usize, value: impl Fn(usize, usize, usize) -> Vec<Scalar>) -> Cochain {
    let mut constants = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                constants.push(([x, y, z], value(x, y, z)));
            }
        }
    }
    Cochain::from_bracket(&ThreeLieAlgebra::new_unchecked(n, constants).expect("increasing triples"))
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = scalar::zeros(n);
    v[i] = scalar::one();
    v
}

fn add_into(acc: &mut [Scalar], v: &[Scalar]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += b;
    }
}

/// An order-`N` deformation of a 3-LieDer pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deformation {
    base: LieDerPair,
    mu: Vec<Cochain>,
    phi: Vec<LinearMap>,
}

impl Deformation {
    /// `mu` and `phi` hold the terms of orders `1..=N`; order 0 comes from `base`.
    ///
    /// Only shapes and total antisymmetry are checked here; the deformation
    /// equations are checked by [`Deformation::validate`].
    pub fn new(base: LieDerPair, mu: Vec<Cochain>, phi: Vec<LinearMap>) -> Result<Self> {
        let n = base.dim();
        if mu.is_empty() {
            return Err(Error::invalid("a deformation has order at least 1"));
        }
        if mu.len() != phi.len() {
            return Err(Error::dim(format!(
                "{} bracket terms but {} derivation terms",
                mu.len(),
                phi.len()
            )));
        }
        for (i, m) in mu.iter().enumerate() {
            if m.degree() != 2 || m.alg_dim() != n || m.mod_dim() != n {
                return Err(Error::dim(format!("μ{} must be a degree-2 cochain on L with values in L", i + 1)));
            }
            if !m.is_totally_antisymmetric() {
                return Err(Error::invalid(format!("μ{} is not totally antisymmetric", i + 1)));
            }
        }
        for (i, p) in phi.iter().enumerate() {
            if p.rows() != n || p.cols() != n {
                return Err(Error::dim(format!("φ{} must be {n}x{n}", i + 1)));
            }
        }
        Ok(Self { base, mu, phi })
    }

    /// The undeformed family of order `order`.
    pub fn constant(base: LieDerPair, order: usize) -> Result<Self> {
        let n = base.dim();
        let mu = (0..order).map(|_| Cochain::zero(2, n, n)).collect::<Result<Vec<_>>>()?;
        Self::new(base, mu, vec![LinearMap::zeros(n, n); order])
    }

    pub fn base(&self) -> &LieDerPair {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.mu.len()
    }

    /// `μ₁..μ_N`.
    pub fn mu(&self) -> &[Cochain] {
        &self.mu
    }

    /// `φ₁..φ_N`.
    pub fn phi(&self) -> &[LinearMap] {
        &self.phi
    }

    /// `(μ_k, φ_k)` including `k = 0`.
    pub fn term(&self, k: usize) -> (Cochain, LinearMap) {
        if k == 0 {
            (Cochain::from_bracket(self.base.algebra()), self.base.phi().clone())
        } else {
            (self.mu[k - 1].clone(), self.phi[k - 1].clone())
        }
    }

    pub fn is_constant(&self) -> bool {
        self.mu.iter().all(Cochain::is_zero) && self.phi.iter().all(LinearMap::is_zero)
    }

    /// The same family with `(μ_{N+1}, φ_{N+1})` appended.
    pub fn extended(&self, mu_next: Cochain, phi_next: LinearMap) -> Result<Deformation> {
        let mut mu = self.mu.clone();
        let mut phi = self.phi.clone();
        mu.push(mu_next);
        phi.push(phi_next);
        Deformation::new(self.base.clone(), mu, phi)
    }

    /// The same family cut at order `order`.
    pub fn truncated(&self, order: usize) -> Result<Deformation> {
        Deformation::new(
            self.base.clone(),
            self.mu[..order].to_vec(),
            self.phi[..order].to_vec(),
        )
    }

    /// Checks the deformation equations order by order on basis tuples.
    pub fn validate(&self, cap: usize) -> DeformationCheck {
        let n = self.base.dim();
        let order = self.order();
        let tensors: Vec<Tensor> = (0..=order).map(|k| Tensor::from_cochain(&self.term(k).0)).collect();
        let phis: Vec<LinearMap> = (0..=order).map(|k| self.term(k).1).collect();
        let pairs = PairIndex::new(n);
        let mut report = ValidationReport::new(cap);
        let mut first_failing_order = None;
        for k in 1..=order {
            // Σ μ_i(x, y, μ_j(z,v,w)) = Σ μ_i(μ_j(x,y,z),v,w) + μ_i(z,μ_j(x,y,v),w) + μ_i(z,v,μ_j(x,y,w))
            let local: Vec<ValidationReport> = (0..pairs.len())
                .into_par_iter()
                .map(|code| {
                    let (x, y) = pairs.pair(code);
                    let mut rep = ValidationReport::new(cap);
                    for z in 0..n {
                        for v in z + 1..n {
                            for w in v + 1..n {
                                let mut lhs = scalar::zeros(n);
                                let mut rhs = scalar::zeros(n);
                                for i in 0..=k {
                                    let (ti, tj) = (&tensors[i], &tensors[k - i]);
                                    add_into(&mut lhs, &ti.last(x, y, tj.basis(z, v, w)));
                                    add_into(&mut rhs, &ti.eval(tj.basis(x, y, z), &unit(n, v), &unit(n, w)));
                                    add_into(&mut rhs, &ti.eval(&unit(n, z), tj.basis(x, y, v), &unit(n, w)));
                                    add_into(&mut rhs, &ti.last(z, v, tj.basis(x, y, w)));
                                }
                                if lhs != rhs {
                                    rep.push(
                                        format!("order-{k} fundamental identity"),
                                        vec![x + 1, y + 1, z + 1, v + 1, w + 1],
                                    );
                                }
                            }
                        }
                    }
                    rep
                })
                .collect();
            for r in local {
                report.merge(r);
            }
            // Σ φ_i(μ_j(x,y,z)) = Σ μ_i(φ_j x, y, z) + μ_i(x, φ_j y, z) + μ_i(x, y, φ_j z)
            for x in 0..n {
                for y in x + 1..n {
                    for z in y + 1..n {
                        let mut lhs = scalar::zeros(n);
                        let mut rhs = scalar::zeros(n);
                        for i in 0..=k {
                            let j = k - i;
                            add_into(&mut lhs, &phis[i].apply(tensors[j].basis(x, y, z)));
                            let t = &tensors[i];
                            let p = &phis[j];
                            add_into(&mut rhs, &t.eval(&p.column(x), &unit(n, y), &unit(n, z)));
                            add_into(&mut rhs, &t.eval(&unit(n, x), &p.column(y), &unit(n, z)));
                            add_into(&mut rhs, &t.last(x, y, &p.column(z)));
                        }
                        if lhs != rhs {
                            report.push(format!("order-{k} Leibniz rule"), vec![x + 1, y + 1, z + 1]);
                        }
                    }
                }
            }
            if first_failing_order.is_none() && !report.is_ok() {
                first_failing_order = Some(k);
            }
        }
        DeformationCheck {
            first_failing_order,
            report,
        }
    }
}

/// Result of [`Deformation::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationCheck {
    pub first_failing_order: Option<usize>,
    pub report: ValidationReport,
}

impl DeformationCheck {
    pub fn is_ok(&self) -> bool {
        self.report.is_ok()
    }
}

pub fn validate_deformation(d: &Deformation, cap: usize) -> DeformationCheck {
    d.validate(cap)
}

/// First nonzero term of a deformation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Infinitesimal {
    Constant,
    Term {
        order: usize,
        term: PairCochain,
        is_cocycle: bool,
    },
}

/// The infinitesimal `(μ_k, φ_k)` with its cocycle certificate.
pub fn infinitesimal(d: &Deformation) -> Result<Infinitesimal> {
    let dermod = DerModule::adjoint(&d.base);
    for k in 1..=d.order() {
        let (mu, phi) = d.term(k);
        if mu.is_zero() && phi.is_zero() {
            continue;
        }
        let term = PairCochain::degree2(mu, &phi)?;
        let is_cocycle = is_cocycle(&d.base, &dermod, &term)?;
        return Ok(Infinitesimal::Term {
            order: k,
            term,
            is_cocycle,
        });
    }
    Ok(Infinitesimal::Constant)
}

/// A formal automorphism `Φ_t = Id + Σ_{i=1}^{N} tⁱ Φᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalIso {
    dim: usize,
    maps: Vec<LinearMap>,
}

impl FormalIso {
    /// `maps` holds `Φ₁..Φ_N`.
    pub fn new(dim: usize, maps: Vec<LinearMap>) -> Result<Self> {
        if maps.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::dim(format!("formal isomorphism terms must be {dim}x{dim}")));
        }
        Ok(Self { dim, maps })
    }

    pub fn identity(dim: usize, order: usize) -> Self {
        Self {
            dim,
            maps: vec![LinearMap::zeros(dim, dim); order],
        }
    }

    /// `Id + t^k Φ`, truncated at `order`.
    pub fn monomial(order: usize, k: usize, map: LinearMap) -> Result<Self> {
        let dim = map.rows();
        let mut maps = vec![LinearMap::zeros(dim, dim); order];
        if k == 0 || k > order {
            return Err(Error::invalid(format!("monomial degree {k} outside 1..={order}")));
        }
        maps[k - 1] = map;
        Self::new(dim, maps)
    }

    pub fn order(&self) -> usize {
        self.maps.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn maps(&self) -> &[LinearMap] {
        &self.maps
    }

    /// `Φ_k`, with `Φ₀ = Id`.
    pub fn term(&self, k: usize) -> LinearMap {
        if k == 0 {
            LinearMap::identity(self.dim)
        } else {
            self.maps[k - 1].clone()
        }
    }

    pub fn is_identity(&self) -> bool {
        self.maps.iter().all(LinearMap::is_zero)
    }

    /// Series inverse: `Ψ₀ = Id`, `Ψ_k = −Σ_{i=1}^{k} Φᵢ Ψ_{k−i}`.
    pub fn inverse(&self) -> FormalIso {
        let mut psi = vec![LinearMap::identity(self.dim)];
        for k in 1..=self.order() {
            let mut acc = LinearMap::zeros(self.dim, self.dim);
            for i in 1..=k {
                acc = acc.sub(&self.term(i).compose(&psi[k - i]).expect("square")).expect("square");
            }
            psi.push(acc);
        }
        psi.remove(0);
        FormalIso {
            dim: self.dim,
            maps: psi,
        }
    }

    /// `self ∘ other`, truncated.
    pub fn compose(&self, other: &FormalIso) -> Result<FormalIso> {
        if self.dim != other.dim || self.order() != other.order() {
            return Err(Error::dim("formal isomorphisms differ in dimension or order"));
        }
        let maps = (1..=self.order())
            .map(|k| {
                let mut acc = LinearMap::zeros(self.dim, self.dim);
                for i in 0..=k {
                    acc = acc.add(&self.term(i).compose(&other.term(k - i))?)?;
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>>>()?;
        FormalIso::new(self.dim, maps)
    }
}

/// Compositions of `total` into `parts` nonnegative integers.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `μ′_t = Φ_t μ_t (Φ_t⁻¹)^{⊗3}` and `φ′_t = Φ_t φ_t Φ_t⁻¹`, truncated.
pub fn apply_equivalence(iso: &FormalIso, d: &Deformation) -> Result<Deformation> {
    let n = d.base.dim();
    if iso.dim() != n || iso.order() != d.order() {
        return Err(Error::dim("formal isomorphism does not match the deformation"));
    }
    let order = d.order();
    let inv = iso.inverse();
    let tensors: Vec<Tensor> = (0..=order).map(|k| Tensor::from_cochain(&d.term(k).0)).collect();
    let phis: Vec<LinearMap> = (0..=order).map(|k| d.term(k).1).collect();
    let fwd: Vec<LinearMap> = (0..=order).map(|k| iso.term(k)).collect();
    let back: Vec<LinearMap> = (0..=order).map(|k| inv.term(k)).collect();
    let mut mu = Vec::with_capacity(order);
    let mut phi = Vec::with_capacity(order);
    for k in 1..=order {
        let comps = compositions(k, 5);
        mu.push(cochain_from_triples(n, |x, y, z| {
            let mut acc = scalar::zeros(n);
            for c in &comps {
                let [a, b, p, q, r] = [c[0], c[1], c[2], c[3], c[4]];
                let inner = tensors[b].eval(&back[p].column(x), &back[q].column(y), &back[r].column(z));
                if !scalar::is_zero_vec(&inner) {
                    add_into(&mut acc, &fwd[a].apply(&inner));
                }
            }
            acc
        }));
        let mut acc = LinearMap::zeros(n, n);
        for c in compositions(k, 3) {
            acc = acc.add(&fwd[c[0]].compose(&phis[c[1]])?.compose(&back[c[2]])?)?;
        }
        phi.push(acc);
    }
    Deformation::new(d.base.clone(), mu, phi)
}

/// `(Ob³, Ob²) = (−½ Σ [μᵢ, μⱼ], −Σ [φᵢ, μⱼ])` over `i + j = N + 1`, `i, j > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub cochain: PairCochain,
    pub is_cocycle: bool,
}

pub fn obstruction(d: &Deformation) -> Result<Obstruction> {
    let n = d.base.dim();
    let target = d.order() + 1;
    let mut ob3 = Cochain::zero(3, n, n)?;
    let mut ob2 = Cochain::zero(2, n, n)?;
    for i in 1..target {
        let j = target - i;
        let (mu_i, phi_i) = d.term(i);
        let (mu_j, _) = d.term(j);
        ob3 = ob3.add(&bracket(&mu_i, &mu_j)?)?;
        ob2 = ob2.add(&bracket(&Cochain::from_linear_map(&phi_i), &mu_j)?)?;
    }
    let ob3 = ob3.scale(&scalar::frac(-1, 2));
    let ob2 = ob2.neg();
    let cochain = PairCochain::new(ob3, Some(ob2))?;
    let is_cocycle = is_cocycle(&d.base, &DerModule::adjoint(&d.base), &cochain)?;
    Ok(Obstruction { cochain, is_cocycle })
}

/// Embedding of `(totally antisymmetric μ, φ)` coordinates into `C²_pair(L, L)`.
///
/// Columns: one per increasing triple and output index, then the `n²` entries of `φ`.
fn antisymmetric_embedding(n: usize) -> QMatrix {
    let pairs = PairIndex::new(n);
    let top = pairs.len() * n * n;
    let mut columns: Vec<SparseVec> = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                for r in 0..n {
                    let mut col = Vec::new();
                    // the six permutations collapse to three pair-slot entries
                    for (a, b, c, s) in [(x, y, z, 1), (x, z, y, -1), (y, z, x, 1)] {
                        let code = pairs.code(a, b).expect("a < b");
                        col.push(((code * n + c) * n + r, scalar::int(s)));
                    }
                    columns.push(col);
                }
            }
        }
    }
    for l in 0..n {
        for r in 0..n {
            columns.push(vec![(top + l * n + r, scalar::one())]);
        }
    }
    let rows = top + n * n;
    let mut row_data: Vec<SparseVec> = vec![Vec::new(); rows];
    for (c, col) in columns.iter().enumerate() {
        for (r, v) in col {
            row_data[*r].push((c, v.clone()));
        }
    }
    QMatrix::from_rows(columns.len(), row_data).expect("in range")
}

fn from_antisymmetric_coords(n: usize, v: &[Scalar]) -> Result<(Cochain, LinearMap)> {
    let mut idx = 0;
    let mut values = std::collections::BTreeMap::new();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                values.insert((x, y, z), v[idx..idx + n].to_vec());
                idx += n;
            }
        }
    }
    let mu = cochain_from_triples(n, |x, y, z| values[&(x, y, z)].clone());
    let phi = LinearMap::from_fn(n, n, |r, l| v[idx + l * n + r].clone());
    Ok((mu, phi))
}

/// Matrix of `∂²` restricted to totally antisymmetric brackets, with columns
/// ordered as in the embedding.
pub fn restricted_pair_d(pair: &LieDerPair) -> Result<QMatrix> {
    let dermod = DerModule::adjoint(pair);
    pair_d_matrix(pair, &dermod, 2)?.mul(&antisymmetric_embedding(pair.dim()))
}

/// Basis of infinitesimals: 2-cocycles `(μ, φ)` with `μ` totally antisymmetric.
pub fn antisymmetric_cocycles(pair: &LieDerPair) -> Result<Vec<(Cochain, LinearMap)>> {
    let n = pair.dim();
    crate::linalg::kernel_basis(&restricted_pair_d(pair)?)
        .into_iter()
        .map(|v| from_antisymmetric_coords(n, &v))
        .collect()
}

/// `(μ_{N+1}, φ_{N+1})` with `∂(μ_{N+1}, φ_{N+1}) = (Ob³, Ob²)` and
/// `μ_{N+1}` totally antisymmetric, or `None` if there is none.
pub fn extend_deformation(d: &Deformation) -> Result<Option<(Cochain, LinearMap)>> {
    let ob = obstruction(d)?;
    let n = d.base.dim();
    let op = restricted_pair_d(&d.base)?;
    let Some(v) = solve(&op, &ob.cochain.to_vector()) else {
        return Ok(None);
    };
    Ok(Some(from_antisymmetric_coords(n, &v)?))
}

/// Outcome of [`trivialize_up_to`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Trivialization {
    /// `iso` carries the input to the constant deformation.
    Trivial {
        iso: FormalIso,
        deformation: Deformation,
        steps: usize,
    },
    /// The first nonzero term at `order` is not a coboundary.
    Obstructed {
        order: usize,
        iso: FormalIso,
        deformation: Deformation,
        steps: usize,
    },
    /// The step budget ran out before the deformation became constant.
    BudgetExhausted {
        iso: FormalIso,
        deformation: Deformation,
        steps: usize,
    },
}

/// Removes the first nonzero term with `Id + t^k Φ` while it is a coboundary `∂Φ`.
pub fn trivialize_up_to(d: &Deformation, max_steps: usize) -> Result<Trivialization> {
    let n = d.base.dim();
    let dermod = DerModule::adjoint(&d.base);
    let mut iso = FormalIso::identity(n, d.order());
    let mut current = d.clone();
    let mut steps = 0;
    loop {
        let Infinitesimal::Term { order, term, .. } = infinitesimal(&current)? else {
            return Ok(Trivialization::Trivial {
                iso,
                deformation: current,
                steps,
            });
        };
        if steps == max_steps {
            return Ok(Trivialization::BudgetExhausted {
                iso,
                deformation: current,
                steps,
            });
        }
        let Some(pre) = is_coboundary(&d.base, &dermod, &term)? else {
            return Ok(Trivialization::Obstructed {
                order,
                iso,
                deformation: current,
                steps,
            });
        };
        let step = FormalIso::monomial(d.order(), order, pre.f().to_linear_map()?)?;
        current = apply_equivalence(&step, &current)?;
        iso = step.compose(&iso)?;
        steps += 1;
    }
}
