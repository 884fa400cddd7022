//! The coboundary `d`, the twist `δ` and the pair differential `∂`,
//! each assembled as a sparse matrix on the canonical cochain bases.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::{DerModule, LieDerPair, Representation, ThreeLieAlgebra};
use crate::basis::{unit, PairIndex};
use crate::error::{Error, Result};
use crate::linalg::{LinearMap, QMatrix, SparseVec};
use crate::scalar::{self, Scalar};

use super::cochain::{check_degree, Cochain, PairCochain, Shape, MAX_DEGREE};

/// Linear functional on input base tuples with `m × m` block coefficients,
/// describing one output base tuple of an operator.
struct Form {
    m: usize,
    blocks: BTreeMap<usize, Vec<Scalar>>,
}

impl Form {
    fn new(m: usize) -> Self {
        Self {
            m,
            blocks: BTreeMap::new(),
        }
    }

    fn block(&mut self, base: usize) -> &mut Vec<Scalar> {
        let m = self.m;
        self.blocks.entry(base).or_insert_with(|| scalar::zeros(m * m))
    }

    /// Adds `coeff · f(base)`.
    fn add_scalar(&mut self, base: usize, coeff: &Scalar) {
        let m = self.m;
        let b = self.block(base);
        for r in 0..m {
            b[r * m + r] += coeff;
        }
    }

    /// Adds `coeff · A f(base)`.
    fn add_matrix(&mut self, base: usize, coeff: &Scalar, a: &LinearMap) {
        let m = self.m;
        let b = self.block(base);
        for (slot, v) in b.iter_mut().zip(a.entries()) {
            if !v.is_zero() {
                *slot += coeff * v;
            }
        }
        debug_assert_eq!(a.rows(), m);
    }

    /// Adds `coeff · f(slots, last)` expanded multilinearly.
    fn add_eval(&mut self, shape: &Shape, slots: &[SparseVec], last: &SparseVec, coeff: &Scalar) {
        let mut terms = Vec::new();
        shape.expand(slots, last, |base, c| terms.push((base, c * coeff)));
        for (base, c) in terms {
            self.add_scalar(base, &c);
        }
    }

    /// Adds `coeff · A f(slots, last)` expanded multilinearly.
    fn add_eval_matrix(
        &mut self,
        shape: &Shape,
        slots: &[SparseVec],
        last: &SparseVec,
        coeff: &Scalar,
        a: &LinearMap,
    ) {
        let mut terms = Vec::new();
        shape.expand(slots, last, |base, c| terms.push((base, c * coeff)));
        for (base, c) in terms {
            self.add_matrix(base, &c, a);
        }
    }

    /// Rows `out_base·m + r` of the operator matrix.
    fn into_rows(self) -> Vec<SparseVec> {
        let m = self.m;
        let mut rows = vec![Vec::new(); m];
        for (base, b) in self.blocks {
            for r in 0..m {
                for c in 0..m {
                    let v = &b[r * m + c];
                    if !v.is_zero() {
                        rows[r].push((base * m + c, v.clone()));
                    }
                }
            }
        }
        rows
    }
}

/// Assembles an operator `C^{in} → C^{out}` one output base tuple at a time.
fn assemble(input: &Shape, output: &Shape, form: impl Fn(&[usize], usize) -> Form + Sync) -> QMatrix {
    let rows: Vec<SparseVec> = (0..output.bases())
        .into_par_iter()
        .flat_map_iter(|base| {
            let (pairs, last) = output.decode(base);
            form(&pairs, last).into_rows()
        })
        .collect();
    QMatrix::from_rows(input.len(), rows).expect("operator columns in range")
}

fn check_rep(alg: &ThreeLieAlgebra, rep: &Representation) -> Result<()> {
    if rep.alg_dim() != alg.dim() {
        return Err(Error::dim(format!(
            "representation is for dimension {}, algebra has {}",
            rep.alg_dim(),
            alg.dim()
        )));
    }
    Ok(())
}

fn check_module(pair: &LieDerPair, dermod: &DerModule) -> Result<()> {
    check_rep(pair.algebra(), dermod.rep())
}

/// Matrix of `dⁿ: Cⁿ(L, M) → Cⁿ⁺¹(L, M)`.
pub fn d_matrix(alg: &ThreeLieAlgebra, rep: &Representation, degree: usize) -> Result<QMatrix> {
    check_degree(degree, MAX_DEGREE)?;
    check_rep(alg, rep)?;
    let n_l = alg.dim();
    let m = rep.mod_dim();
    let input = Shape::new(degree, n_l, m);
    let output = Shape::new(degree + 1, n_l, m);
    let index = PairIndex::new(n_l);
    let n = degree;
    let sign_n1 = scalar::sign(n + 1);
    Ok(assemble(&input, &output, |pairs, last| {
        let mut form = Form::new(m);
        let xy: Vec<(usize, usize)> = pairs.iter().map(|&p| index.pair(p)).collect();
        let slots_of = |skip: usize| -> Vec<SparseVec> {
            pairs
                .iter()
                .enumerate()
                .filter(|(t, _)| *t != skip)
                .map(|(_, &p)| unit(p))
                .collect()
        };
        // boundary terms: (−1)^{n+1} ρ(y_n, x) f(X_1..X_{n−1}, x_n) + (−1)^{n+1} ρ(x, x_n) f(.., y_n)
        let (xn, yn) = xy[n - 1];
        let head = &pairs[..n - 1];
        if let Some((a, neg)) = rep.basis_action(yn, last) {
            let c = if neg { -&sign_n1 } else { sign_n1.clone() };
            form.add_matrix(input.base_index(head, xn), &c, a);
        }
        if let Some((a, neg)) = rep.basis_action(last, xn) {
            let c = if neg { -&sign_n1 } else { sign_n1.clone() };
            form.add_matrix(input.base_index(head, yn), &c, a);
        }
        for j in 0..n {
            let (xj, yj) = xy[j];
            let sj = scalar::sign(j + 2); // (−1)^{j+1} with 1-based j
            let slots = slots_of(j);
            // (−1)^{j+1} ρ(x_j, y_j) f(.., X̂_j, .., x)
            if let Some((a, neg)) = rep.basis_action(xj, yj) {
                let c = if neg { -&sj } else { sj.clone() };
                form.add_eval_matrix(&input, &slots, &unit(last), &c, a);
            }
            // (−1)^j f(.., X̂_j, .., [x_j, y_j, x])
            let br = alg.bracket_basis_sparse(xj, yj, last);
            if !br.is_empty() {
                form.add_eval(&input, &slots, &br, &-&sj);
            }
            // (−1)^j f(.., X̂_j, .., [x_j,y_j,x_k]∧y_k + x_k∧[x_j,y_j,y_k], .., x)
            for k in j + 1..n {
                let (xk, yk) = xy[k];
                let mut w = index.wedge(&alg.bracket_basis_sparse(xj, yj, xk), &unit(yk));
                w.extend(index.wedge(&unit(xk), &alg.bracket_basis_sparse(xj, yj, yk)));
                let w = crate::linalg::sparse::normalize(w);
                if w.is_empty() {
                    continue;
                }
                let mut slots = slots.clone();
                // slot k sits at position k − 1 once X_j is removed
                slots[k - 1] = w;
                form.add_eval(&input, &slots, &unit(last), &-&sj);
            }
        }
        form
    }))
}

/// Matrix of `δ: Cⁿ(L, M) → Cⁿ(L, M)`.
pub fn delta_matrix(pair: &LieDerPair, dermod: &DerModule, degree: usize) -> Result<QMatrix> {
    check_degree(degree, MAX_DEGREE)?;
    check_module(pair, dermod)?;
    let n_l = pair.dim();
    let m = dermod.mod_dim();
    let shape = Shape::new(degree, n_l, m);
    let index = PairIndex::new(n_l);
    let phi = pair.phi();
    let phi_cols: Vec<SparseVec> = (0..n_l).map(|c| crate::basis::to_sparse(&phi.column(c))).collect();
    let phi_m = dermod.phi_m();
    let minus = scalar::int(-1);
    Ok(assemble(&shape, &shape, |pairs, last| {
        let mut form = Form::new(m);
        let slots: Vec<SparseVec> = pairs.iter().map(|&p| unit(p)).collect();
        for t in 0..pairs.len() {
            let (x, y) = index.pair(pairs[t]);
            let mut w = index.wedge(&phi_cols[x], &unit(y));
            w.extend(index.wedge(&unit(x), &phi_cols[y]));
            let w = crate::linalg::sparse::normalize(w);
            if w.is_empty() {
                continue;
            }
            let mut s = slots.clone();
            s[t] = w;
            form.add_eval(&shape, &s, &unit(last), &scalar::one());
        }
        if !phi_cols[last].is_empty() {
            form.add_eval(&shape, &slots, &phi_cols[last], &scalar::one());
        }
        if !phi_m.is_zero() {
            form.add_matrix(shape.base_index(pairs, last), &minus, phi_m);
        }
        form
    }))
}

/// Matrix of `∂ⁿ` on the pair complex.
///
/// Columns are the `f` block then the `f̄` block of `Cⁿ`, rows likewise for
/// `Cⁿ⁺¹`. For `n = 1` this is `[d¹; −δ¹]`, otherwise
/// `[[dⁿ, 0], [(−1)ⁿ δⁿ, dⁿ⁻¹]]`.
pub fn pair_d_matrix(pair: &LieDerPair, dermod: &DerModule, degree: usize) -> Result<QMatrix> {
    check_degree(degree, MAX_DEGREE)?;
    check_module(pair, dermod)?;
    let n_l = pair.dim();
    let m = dermod.mod_dim();
    let alg = pair.algebra();
    let rep = dermod.rep();
    let len = |k: usize| Shape::new(k, n_l, m).len();
    let d_top = d_matrix(alg, rep, degree)?;
    let delta = delta_matrix(pair, dermod, degree)?;
    if degree == 1 {
        let neg = delta.scale(&scalar::int(-1));
        return QMatrix::block2(len(2), len(1), len(1), 0, [Some(&d_top), None, Some(&neg), None]);
    }
    let d_low = d_matrix(alg, rep, degree - 1)?;
    let signed = delta.scale(&scalar::sign(degree));
    QMatrix::block2(
        len(degree + 1),
        len(degree),
        len(degree),
        len(degree - 1),
        [Some(&d_top), None, Some(&signed), Some(&d_low)],
    )
}

fn apply(op: &QMatrix, f: &Cochain, degree: usize) -> Result<Cochain> {
    Cochain::from_coeffs(degree, f.alg_dim(), f.mod_dim(), op.apply(f.coeffs()))
}

fn check_cochain(f: &Cochain, alg_dim: usize, mod_dim: usize) -> Result<()> {
    if f.alg_dim() != alg_dim || f.mod_dim() != mod_dim {
        return Err(Error::dim(format!(
            "cochain acts on ({}→{}), expected ({alg_dim}→{mod_dim})",
            f.alg_dim(),
            f.mod_dim()
        )));
    }
    Ok(())
}

/// `dⁿ f`.
pub fn d(alg: &ThreeLieAlgebra, rep: &Representation, f: &Cochain) -> Result<Cochain> {
    check_cochain(f, alg.dim(), rep.mod_dim())?;
    apply(&d_matrix(alg, rep, f.degree())?, f, f.degree() + 1)
}

/// `δ f`.
pub fn delta(pair: &LieDerPair, dermod: &DerModule, f: &Cochain) -> Result<Cochain> {
    check_cochain(f, pair.dim(), dermod.mod_dim())?;
    apply(&delta_matrix(pair, dermod, f.degree())?, f, f.degree())
}

/// `∂ pc`.
pub fn pair_d(pair: &LieDerPair, dermod: &DerModule, pc: &PairCochain) -> Result<PairCochain> {
    check_cochain(pc.f(), pair.dim(), dermod.mod_dim())?;
    let n = pc.degree();
    let op = pair_d_matrix(pair, dermod, n)?;
    PairCochain::from_vector(n + 1, pc.alg_dim(), pc.mod_dim(), &op.apply(&pc.to_vector()))
}
