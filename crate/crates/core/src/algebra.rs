//! 3-Lie algebras, derivations, representations and 3-LieDer pairs.
//!
//! Structure constants are stored only for strictly increasing index triples;
//! brackets of other basis triples are recovered with the permutation sign, and
//! a repeated index gives zero. All indices are 0-based here. The JSON layer
//! converts to and from the 1-based external convention.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use crate::basis::{to_sparse, PairIndex};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, LinearMap, QMatrix, SparseVec};
use crate::report::{ValidationReport, DEFAULT_MAX_VIOLATIONS};
use crate::scalar::{self, Scalar};

/// Sign of the permutation sorting three distinct indices, with the sorted triple.
fn sort3(i: usize, j: usize, k: usize) -> Option<(bool, [usize; 3])> {
    if i == j || j == k || i == k {
        return None;
    }
    let mut t = [i, j, k];
    let mut odd = false;
    for a in 0..3 {
        for b in 0..2 - a {
            if t[b] > t[b + 1] {
                t.swap(b, b + 1);
                odd = !odd;
            }
        }
    }
    Some((odd, t))
}

/// A finite dimensional 3-Lie algebra given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeLieAlgebra {
    dim: usize,
    constants: BTreeMap<[usize; 3], Vec<Scalar>>,
}

impl ThreeLieAlgebra {
    /// Builds an algebra and checks the fundamental identity.
    pub fn new(
        dim: usize,
        constants: impl IntoIterator<Item = ([usize; 3], Vec<Scalar>)>,
    ) -> Result<Self> {
        let alg = Self::new_unchecked(dim, constants)?;
        let report = alg.validate(DEFAULT_MAX_VIOLATIONS);
        if report.is_ok() {
            Ok(alg)
        } else {
            Err(Error::Violated {
                what: "fundamental identity",
                report,
            })
        }
    }

    /// Builds an algebra checking only the shape of the structure constants.
    pub fn new_unchecked(
        dim: usize,
        constants: impl IntoIterator<Item = ([usize; 3], Vec<Scalar>)>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("algebra dimension must be positive"));
        }
        let mut map = BTreeMap::new();
        for (key, value) in constants {
            let malformed = |reason: &str| Error::MalformedKey {
                key: key.iter().map(|i| i + 1).collect(),
                reason: reason.to_string(),
            };
            if !(key[0] < key[1] && key[1] < key[2]) {
                return Err(malformed("triple must be strictly increasing"));
            }
            if key[2] >= dim {
                return Err(malformed("index out of range"));
            }
            if value.len() != dim {
                return Err(Error::dim(format!(
                    "bracket {:?} has {} coefficients, expected {dim}",
                    key.map(|i| i + 1),
                    value.len()
                )));
            }
            if map.contains_key(&key) {
                return Err(malformed("duplicate triple"));
            }
            if !scalar::is_zero_vec(&value) {
                map.insert(key, value);
            }
        }
        Ok(Self {
            dim,
            constants: map,
        })
    }

    pub fn abelian(dim: usize) -> Self {
        Self {
            dim,
            constants: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.is_empty()
    }

    /// Nonzero structure constants, keyed by increasing 0-based triples.
    pub fn constants(&self) -> &BTreeMap<[usize; 3], Vec<Scalar>> {
        &self.constants
    }

    /// `[e_i, e_j, e_k]` as a dense vector.
    pub fn bracket_basis(&self, i: usize, j: usize, k: usize) -> Vec<Scalar> {
        match sort3(i, j, k) {
            Some((odd, key)) => match self.constants.get(&key) {
                Some(v) if odd => v.iter().map(|x| -x).collect(),
                Some(v) => v.clone(),
                None => scalar::zeros(self.dim),
            },
            None => scalar::zeros(self.dim),
        }
    }

    /// `[e_i, e_j, e_k]` as a sparse vector.
    pub fn bracket_basis_sparse(&self, i: usize, j: usize, k: usize) -> SparseVec {
        match sort3(i, j, k) {
            Some((odd, key)) => match self.constants.get(&key) {
                Some(v) => v
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(l, x)| (l, if odd { -x } else { x.clone() }))
                    .collect(),
                None => Vec::new(),
            },
            None => Vec::new(),
        }
    }

    /// Trilinear extension of the bracket.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
        let mut out = scalar::zeros(self.dim);
        for ([a, b, c], v) in &self.constants {
            // 3x3 minor of the rows x, y, z on columns a, b, c
            let det = &x[*a] * (&y[*b] * &z[*c] - &y[*c] * &z[*b])
                - &x[*b] * (&y[*a] * &z[*c] - &y[*c] * &z[*a])
                + &x[*c] * (&y[*a] * &z[*b] - &y[*b] * &z[*a]);
            scalar::add_scaled(&mut out, &det, v);
        }
        out
    }

    /// Exhaustive check of the fundamental identity over basis 5-tuples.
    ///
    /// Both sides are antisymmetric in the first two and in the last three
    /// arguments, so tuples with `a < b` and `u < v < w` cover every case.
    pub fn validate(&self, cap: usize) -> ValidationReport {
        let n = self.dim;
        let pairs = PairIndex::new(n);
        let reports: Vec<ValidationReport> = (0..pairs.len())
            .into_par_iter()
            .map(|code| {
                let (a, b) = pairs.pair(code);
                let mut report = ValidationReport::new(cap);
                for u in 0..n {
                    for v in u + 1..n {
                        for w in v + 1..n {
                            if !self.fundamental_identity_holds(a, b, u, v, w) {
                                report.push("fundamental identity", vec![a + 1, b + 1, u + 1, v + 1, w + 1]);
                            }
                        }
                    }
                }
                report
            })
            .collect();
        let mut out = ValidationReport::new(cap);
        for r in reports {
            out.merge(r);
        }
        out
    }

    fn fundamental_identity_holds(&self, a: usize, b: usize, u: usize, v: usize, w: usize) -> bool {
        let e = |i: usize| {
            let mut x = scalar::zeros(self.dim);
            x[i] = scalar::one();
            x
        };
        let (ea, eb, eu, ev, ew) = (e(a), e(b), e(u), e(v), e(w));
        let lhs = self.bracket(&ea, &eb, &self.bracket_basis(u, v, w));
        let mut rhs = self.bracket(&self.bracket_basis(a, b, u), &ev, &ew);
        let t2 = self.bracket(&eu, &self.bracket_basis(a, b, v), &ew);
        let t3 = self.bracket(&eu, &ev, &self.bracket_basis(a, b, w));
        for ((r, x), y) in rhs.iter_mut().zip(&t2).zip(&t3) {
            *r += x + y;
        }
        lhs == rhs
    }

    /// Image of this algebra's structure under the linear isomorphism `g`:
    /// the bracket `g[g⁻¹x, g⁻¹y, g⁻¹z]`.
    pub fn transport(&self, g: &LinearMap) -> Result<ThreeLieAlgebra> {
        let ginv = g
            .inverse()
            .ok_or_else(|| Error::invalid("change of basis is not invertible"))?;
        if g.rows() != self.dim {
            return Err(Error::dim("change of basis has wrong size"));
        }
        let n = self.dim;
        let mut constants = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let v = self.bracket(&ginv.column(i), &ginv.column(j), &ginv.column(k));
                    constants.push(([i, j, k], g.apply(&v)));
                }
            }
        }
        ThreeLieAlgebra::new_unchecked(n, constants)
    }
}

/// Checks the fundamental identity for raw structure constants.
pub fn validate_3lie(
    dim: usize,
    constants: impl IntoIterator<Item = ([usize; 3], Vec<Scalar>)>,
    cap: usize,
) -> Result<ValidationReport> {
    Ok(ThreeLieAlgebra::new_unchecked(dim, constants)?.validate(cap))
}

/// Leibniz rule `φ[x,y,z] = [φx,y,z] + [x,φy,z] + [x,y,φz]` on basis triples.
pub fn derivation_report(alg: &ThreeLieAlgebra, phi: &LinearMap, cap: usize) -> Result<ValidationReport> {
    let n = alg.dim();
    if phi.rows() != n || phi.cols() != n {
        return Err(Error::dim(format!(
            "derivation must be {n}x{n}, got {}x{}",
            phi.rows(),
            phi.cols()
        )));
    }
    let mut report = ValidationReport::new(cap);
    let e = |i: usize| {
        let mut x = scalar::zeros(n);
        x[i] = scalar::one();
        x
    };
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let lhs = phi.apply(&alg.bracket_basis(i, j, k));
                let (ei, ej, ek) = (e(i), e(j), e(k));
                let mut rhs = alg.bracket(&phi.column(i), &ej, &ek);
                let t2 = alg.bracket(&ei, &phi.column(j), &ek);
                let t3 = alg.bracket(&ei, &ej, &phi.column(k));
                for ((r, x), y) in rhs.iter_mut().zip(&t2).zip(&t3) {
                    *r += x + y;
                }
                if lhs != rhs {
                    report.push("Leibniz rule", vec![i + 1, j + 1, k + 1]);
                }
            }
        }
    }
    Ok(report)
}

pub fn is_derivation(alg: &ThreeLieAlgebra, phi: &LinearMap) -> Result<bool> {
    Ok(derivation_report(alg, phi, 1)?.is_ok())
}

/// The Leibniz rule as a linear system in the `n²` entries of `φ`
/// (row-major unknowns), one equation per triple `i<j<k` and component.
pub fn leibniz_system(alg: &ThreeLieAlgebra) -> QMatrix {
    let n = alg.dim();
    let var = |r: usize, c: usize| r * n + c;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let ijk = alg.bracket_basis_sparse(i, j, k);
                let rjk: Vec<SparseVec> = (0..n).map(|r| alg.bracket_basis_sparse(r, j, k)).collect();
                let irk: Vec<SparseVec> = (0..n).map(|r| alg.bracket_basis_sparse(i, r, k)).collect();
                let ijr: Vec<SparseVec> = (0..n).map(|r| alg.bracket_basis_sparse(i, j, r)).collect();
                for l in 0..n {
                    let mut row: SparseVec = Vec::new();
                    for (r, c) in &ijk {
                        row.push((var(l, *r), c.clone()));
                    }
                    for r in 0..n {
                        for (slot, table) in [(i, &rjk), (j, &irk), (k, &ijr)] {
                            if let Some((_, c)) = table[r].iter().find(|(m, _)| *m == l) {
                                row.push((var(r, slot), -c));
                            }
                        }
                    }
                    rows.push(row);
                }
            }
        }
    }
    QMatrix::from_rows(n * n, rows).expect("leibniz rows are in range")
}

/// A basis of the derivation algebra `Der(L)`.
pub fn derivation_space(alg: &ThreeLieAlgebra) -> Vec<LinearMap> {
    let n = alg.dim();
    kernel_basis(&leibniz_system(alg))
        .into_iter()
        .map(|v| LinearMap::new(n, n, v).expect("kernel vector has n² entries"))
        .collect()
}

/// A representation `ρ: L ∧ L → gl(M)`, stored on ordered pairs `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    alg_dim: usize,
    mod_dim: usize,
    pairs: PairIndex,
    rho: Vec<LinearMap>,
}

impl Representation {
    /// `rho` is indexed by pair code; each matrix is `mod_dim × mod_dim`.
    pub fn new(alg_dim: usize, mod_dim: usize, rho: Vec<LinearMap>) -> Result<Self> {
        let pairs = PairIndex::new(alg_dim);
        if rho.len() != pairs.len() {
            return Err(Error::dim(format!(
                "representation needs {} pair matrices, got {}",
                pairs.len(),
                rho.len()
            )));
        }
        if let Some(m) = rho.iter().find(|m| m.rows() != mod_dim || m.cols() != mod_dim) {
            return Err(Error::dim(format!(
                "pair matrix is {}x{}, expected {mod_dim}x{mod_dim}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(Self {
            alg_dim,
            mod_dim,
            pairs,
            rho,
        })
    }

    pub fn trivial(alg_dim: usize, mod_dim: usize) -> Self {
        let pairs = PairIndex::new(alg_dim);
        let rho = vec![LinearMap::zeros(mod_dim, mod_dim); pairs.len()];
        Self {
            alg_dim,
            mod_dim,
            pairs,
            rho,
        }
    }

    /// `ρ(x, y) = [x, y, ·]`.
    pub fn adjoint(alg: &ThreeLieAlgebra) -> Self {
        let n = alg.dim();
        let pairs = PairIndex::new(n);
        let rho = (0..pairs.len())
            .map(|code| {
                let (i, j) = pairs.pair(code);
                let mut m = LinearMap::zeros(n, n);
                for c in 0..n {
                    for (r, v) in alg.bracket_basis_sparse(i, j, c) {
                        m.set(r, c, v);
                    }
                }
                m
            })
            .collect();
        Self {
            alg_dim: n,
            mod_dim: n,
            pairs,
            rho,
        }
    }

    pub fn alg_dim(&self) -> usize {
        self.alg_dim
    }

    pub fn mod_dim(&self) -> usize {
        self.mod_dim
    }

    pub fn pair_index(&self) -> &PairIndex {
        &self.pairs
    }

    /// Matrices indexed by pair code.
    pub fn matrices(&self) -> &[LinearMap] {
        &self.rho
    }

    pub fn is_trivial(&self) -> bool {
        self.rho.iter().all(LinearMap::is_zero)
    }

    /// `ρ(e_i, e_j)` for arbitrary `i, j`, as `(matrix, negate)`; `None` when zero.
    pub fn basis_action(&self, i: usize, j: usize) -> Option<(&LinearMap, bool)> {
        let (code, neg) = self.pairs.wedge_basis(i, j)?;
        let m = &self.rho[code];
        if m.is_zero() {
            None
        } else {
            Some((m, neg))
        }
    }

    /// `ρ(x, y)` as a matrix, for vectors `x, y ∈ L`.
    pub fn action(&self, x: &[Scalar], y: &[Scalar]) -> LinearMap {
        let wedge = self.pairs.wedge(&to_sparse(x), &to_sparse(y));
        let mut out = LinearMap::zeros(self.mod_dim, self.mod_dim);
        for (code, c) in wedge {
            out = out.add(&self.rho[code].scale(&c)).expect("same shape");
        }
        out
    }

    /// Both representation axioms on all basis 4-tuples (up to antisymmetry).
    pub fn validate(&self, alg: &ThreeLieAlgebra, cap: usize) -> Result<ValidationReport> {
        if alg.dim() != self.alg_dim {
            return Err(Error::dim(format!(
                "representation is for dimension {}, algebra has {}",
                self.alg_dim,
                alg.dim()
            )));
        }
        let n = self.alg_dim;
        let e = |i: usize| {
            let mut x = scalar::zeros(n);
            x[i] = scalar::one();
            x
        };
        let r = |x: &[Scalar], y: &[Scalar]| self.action(x, y);
        let mul = |a: &LinearMap, b: &LinearMap| a.compose(b).expect("square");
        let mut report = ValidationReport::new(cap);
        // ρ([x,y,z],u) = ρ(y,z)ρ(x,u) + ρ(z,x)ρ(y,u) + ρ(x,y)ρ(z,u), antisymmetric in x,y,z
        for x in 0..n {
            for y in x + 1..n {
                for z in y + 1..n {
                    let xyz = alg.bracket_basis(x, y, z);
                    for u in 0..n {
                        let (ex, ey, ez, eu) = (e(x), e(y), e(z), e(u));
                        let lhs = r(&xyz, &eu);
                        let rhs = mul(&r(&ey, &ez), &r(&ex, &eu))
                            .add(&mul(&r(&ez, &ex), &r(&ey, &eu)))?
                            .add(&mul(&r(&ex, &ey), &r(&ez, &eu)))?;
                        if lhs != rhs {
                            report.push("representation axiom 1", vec![x + 1, y + 1, z + 1, u + 1]);
                        }
                    }
                }
            }
        }
        // ρ(x,y)ρ(z,u) = ρ(z,u)ρ(x,y) + ρ([x,y,z],u) + ρ(z,[x,y,u]), antisymmetric in x,y and in z,u
        for x in 0..n {
            for y in x + 1..n {
                for z in 0..n {
                    for u in z + 1..n {
                        let (ex, ey, ez, eu) = (e(x), e(y), e(z), e(u));
                        let lhs = mul(&r(&ex, &ey), &r(&ez, &eu));
                        let rhs = mul(&r(&ez, &eu), &r(&ex, &ey))
                            .add(&r(&alg.bracket_basis(x, y, z), &eu))?
                            .add(&r(&ez, &alg.bracket_basis(x, y, u)))?;
                        if lhs != rhs {
                            report.push("representation axiom 2", vec![x + 1, y + 1, z + 1, u + 1]);
                        }
                    }
                }
            }
        }
        Ok(report)
    }
}

pub fn validate_representation(
    alg: &ThreeLieAlgebra,
    rep: &Representation,
    cap: usize,
) -> Result<ValidationReport> {
    rep.validate(alg, cap)
}

/// A 3-Lie algebra together with a distinguished derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieDerPair {
    algebra: ThreeLieAlgebra,
    phi: LinearMap,
}

impl LieDerPair {
    pub fn new(algebra: ThreeLieAlgebra, phi: LinearMap) -> Result<Self> {
        let report = derivation_report(&algebra, &phi, DEFAULT_MAX_VIOLATIONS)?;
        if !report.is_ok() {
            return Err(Error::Violated {
                what: "derivation",
                report,
            });
        }
        Ok(Self { algebra, phi })
    }

    /// The pair `(L, 0)`.
    pub fn with_zero_derivation(algebra: ThreeLieAlgebra) -> Self {
        let n = algebra.dim();
        Self {
            algebra,
            phi: LinearMap::zeros(n, n),
        }
    }

    pub fn algebra(&self) -> &ThreeLieAlgebra {
        &self.algebra
    }

    pub fn phi(&self) -> &LinearMap {
        &self.phi
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }
}

/// A representation `(M, ρ, φ_M)` of a 3-LieDer pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerModule {
    rep: Representation,
    phi_m: LinearMap,
}

impl DerModule {
    pub fn new(pair: &LieDerPair, rep: Representation, phi_m: LinearMap) -> Result<Self> {
        let report = der_module_report(pair, &rep, &phi_m, DEFAULT_MAX_VIOLATIONS)?;
        if !report.is_ok() {
            return Err(Error::Violated {
                what: "derivation module",
                report,
            });
        }
        Ok(Self { rep, phi_m })
    }

    /// `(L, ad, φ_L)`.
    pub fn adjoint(pair: &LieDerPair) -> Self {
        Self {
            rep: Representation::adjoint(pair.algebra()),
            phi_m: pair.phi().clone(),
        }
    }

    /// Trivial action on an `m`-dimensional module with any `φ_M`.
    pub fn trivial(pair: &LieDerPair, phi_m: LinearMap) -> Result<Self> {
        if !phi_m.is_square() {
            return Err(Error::dim("module derivation must be square"));
        }
        Ok(Self {
            rep: Representation::trivial(pair.dim(), phi_m.rows()),
            phi_m,
        })
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn phi_m(&self) -> &LinearMap {
        &self.phi_m
    }

    pub fn mod_dim(&self) -> usize {
        self.rep.mod_dim()
    }

    /// Whether this module is the adjoint module of `pair`.
    pub fn is_adjoint_of(&self, pair: &LieDerPair) -> bool {
        self.rep == Representation::adjoint(pair.algebra()) && &self.phi_m == pair.phi()
    }
}

/// Representation axioms plus
/// `φ_M ρ(x,y) = ρ(φx,y) + ρ(x,φy) + ρ(x,y) φ_M` on basis pairs and module basis vectors.
pub fn der_module_report(
    pair: &LieDerPair,
    rep: &Representation,
    phi_m: &LinearMap,
    cap: usize,
) -> Result<ValidationReport> {
    let n = pair.dim();
    let m = rep.mod_dim();
    if phi_m.rows() != m || phi_m.cols() != m {
        return Err(Error::dim(format!(
            "module derivation must be {m}x{m}, got {}x{}",
            phi_m.rows(),
            phi_m.cols()
        )));
    }
    let mut report = rep.validate(pair.algebra(), cap)?;
    let phi = pair.phi();
    let e = |i: usize| {
        let mut x = scalar::zeros(n);
        x[i] = scalar::one();
        x
    };
    for x in 0..n {
        for y in x + 1..n {
            let (ex, ey) = (e(x), e(y));
            let rxy = rep.action(&ex, &ey);
            let lhs = phi_m.compose(&rxy)?;
            let rhs = rep
                .action(&phi.column(x), &ey)
                .add(&rep.action(&ex, &phi.column(y)))?
                .add(&rxy.compose(phi_m)?)?;
            for c in 0..m {
                if lhs.column(c) != rhs.column(c) {
                    report.push("derivation compatibility", vec![x + 1, y + 1, c + 1]);
                }
            }
        }
    }
    Ok(report)
}

pub fn validate_der_module(pair: &LieDerPair, dermod: &DerModule, cap: usize) -> Result<ValidationReport> {
    der_module_report(pair, dermod.rep(), dermod.phi_m(), cap)
}

/// The semidirect product pair `(L ⊕ M, φ_L ⊕ φ_M)`.
///
/// Basis: `e_1..e_n` of `L` followed by `f_1..f_m` of `M`.
pub fn semidirect(pair: &LieDerPair, dermod: &DerModule) -> Result<LieDerPair> {
    let report = validate_der_module(pair, dermod, DEFAULT_MAX_VIOLATIONS)?;
    if !report.is_ok() {
        return Err(Error::Violated {
            what: "derivation module",
            report,
        });
    }
    let n = pair.dim();
    let m = dermod.mod_dim();
    let total = n + m;
    let mut constants = Vec::new();
    for ([i, j, k], v) in pair.algebra().constants() {
        let mut w = v.clone();
        w.extend(scalar::zeros(m));
        constants.push(([*i, *j, *k], w));
    }
    // [e_i, e_j, f_a] = ρ(e_i, e_j) f_a
    let pairs = dermod.rep().pair_index();
    for code in 0..pairs.len() {
        let (i, j) = pairs.pair(code);
        let rho = &dermod.rep().matrices()[code];
        for a in 0..m {
            let col = rho.column(a);
            if scalar::is_zero_vec(&col) {
                continue;
            }
            let mut w = scalar::zeros(n);
            w.extend(col);
            constants.push(([i, j, n + a], w));
        }
    }
    let algebra = ThreeLieAlgebra::new(total, constants)?;
    LieDerPair::new(algebra, pair.phi().direct_sum(dermod.phi_m()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::int;

    #[test]
    fn abelian_is_valid() {
        assert!(ThreeLieAlgebra::abelian(3).validate(10).is_ok());
    }

    #[test]
    fn malformed_keys_are_input_errors() {
        let v = vec![int(0), int(0), int(0), int(1)];
        let err = validate_3lie(4, [([0, 2, 1], v.clone())], 10).unwrap_err();
        assert!(matches!(err, Error::MalformedKey { .. }));
        let err = validate_3lie(4, [([0, 1, 4], v)], 10).unwrap_err();
        assert!(matches!(err, Error::MalformedKey { .. }));
        let err = validate_3lie(4, [([0, 1, 2], vec![int(1)])], 10).unwrap_err();
        assert!(matches!(err, Error::Dimension(_)));
    }

    #[test]
    fn conflicting_brackets_violate_identity() {
        let e1 = vec![int(1), int(0), int(0), int(0)];
        let e2 = vec![int(0), int(1), int(0), int(0)];
        let report = validate_3lie(4, [([0, 1, 2], e1), ([0, 1, 3], e2)], 10).unwrap();
        assert!(!report.is_ok());
        assert_eq!(report.first().unwrap().indices, vec![1, 2, 1, 3, 4]);
    }

    #[test]
    fn bracket_signs_follow_permutations() {
        let alg = fixtures::nilpotent4();
        assert_eq!(alg.bracket_basis(0, 1, 2), vec![int(0), int(0), int(0), int(1)]);
        assert_eq!(alg.bracket_basis(1, 0, 2), vec![int(0), int(0), int(0), int(-1)]);
        assert_eq!(alg.bracket_basis(2, 0, 1), vec![int(0), int(0), int(0), int(1)]);
        assert!(scalar::is_zero_vec(&alg.bracket_basis(0, 0, 2)));
    }

    #[test]
    fn derivation_examples() {
        let alg = fixtures::nilpotent4();
        assert!(is_derivation(&alg, &LinearMap::zeros(4, 4)).unwrap());
        assert!(is_derivation(&alg, &fixtures::diag(&[1, 1, 1, 3])).unwrap());
        let report = derivation_report(&alg, &LinearMap::identity(4), 10).unwrap();
        assert!(!report.is_ok());
        assert_eq!(report.first().unwrap().indices, vec![1, 2, 3]);
        assert!(is_derivation(&alg, &LinearMap::identity(3)).is_err());
    }

    #[test]
    fn abelian_derivations_are_all_maps() {
        for n in 1..=4 {
            assert_eq!(derivation_space(&ThreeLieAlgebra::abelian(n)).len(), n * n);
        }
    }

    #[test]
    fn derivation_space_elements_are_derivations() {
        for alg in [fixtures::nilpotent4(), fixtures::simple4()] {
            let basis = derivation_space(&alg);
            assert!(!basis.is_empty());
            for phi in &basis {
                assert!(is_derivation(&alg, phi).unwrap());
            }
        }
    }

    #[test]
    fn adjoint_of_nilpotent() {
        let alg = fixtures::nilpotent4();
        let rep = Representation::adjoint(&alg);
        let r12 = &rep.matrices()[0];
        assert_eq!(r12.column(2), vec![int(0), int(0), int(0), int(1)]);
        for c in [0, 1, 3] {
            assert!(scalar::is_zero_vec(&r12.column(c)));
        }
        assert!(rep.validate(&alg, 10).unwrap().is_ok());
        assert!(Representation::adjoint(&ThreeLieAlgebra::abelian(3)).is_trivial());
    }

    #[test]
    fn trivial_rep_shapes() {
        let r = Representation::trivial(2, 1);
        assert_eq!(r.matrices().len(), 1);
        let r = Representation::trivial(4, 2);
        assert_eq!(r.matrices().len(), 6);
        assert!(r.matrices().iter().all(|m| m.rows() == 2 && m.is_zero()));
        assert!(r.validate(&fixtures::simple4(), 10).unwrap().is_ok());
    }

    #[test]
    fn der_module_examples() {
        let pair = fixtures::nilpotent4_pair();
        let triv = DerModule::trivial(&pair, LinearMap::from_i64(2, 2, &[1, 2, 3, 4])).unwrap();
        assert!(validate_der_module(&pair, &triv, 10).unwrap().is_ok());
        let adj = DerModule::adjoint(&pair);
        assert!(validate_der_module(&pair, &adj, 10).unwrap().is_ok());
        let bad = der_module_report(
            &pair,
            &Representation::adjoint(pair.algebra()),
            &LinearMap::identity(4),
            10,
        )
        .unwrap();
        assert!(!bad.is_ok());
    }

    #[test]
    fn semidirect_of_abelian_with_trivial_rep() {
        let pair = LieDerPair::new(ThreeLieAlgebra::abelian(2), fixtures::diag(&[1, 2])).unwrap();
        let dm = DerModule::trivial(&pair, fixtures::diag(&[5])).unwrap();
        let out = semidirect(&pair, &dm).unwrap();
        assert_eq!(out.dim(), 3);
        assert!(out.algebra().is_abelian());
        assert_eq!(out.phi(), &fixtures::diag(&[1, 2, 5]));
    }

    #[test]
    fn semidirect_with_adjoint_restricts_to_original() {
        let pair = LieDerPair::with_zero_derivation(fixtures::nilpotent4());
        let out = semidirect(&pair, &DerModule::adjoint(&pair)).unwrap();
        assert_eq!(out.dim(), 8);
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let full = out.algebra().bracket_basis(i, j, k);
                    assert_eq!(&full[..4], &pair.algebra().bracket_basis(i, j, k)[..]);
                    assert!(scalar::is_zero_vec(&full[4..]));
                }
            }
        }
        // [e1, e2, f3] = ρ(e1,e2) f3 = f4
        let mut expect = scalar::zeros(8);
        expect[7] = int(1);
        assert_eq!(out.algebra().bracket_basis(0, 1, 6), expect);
    }
}
