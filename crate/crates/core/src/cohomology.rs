//! Cohomology of the pair complex and of the plain 3-Lie complex.

use crate::algebra::{DerModule, LieDerPair, Representation, ThreeLieAlgebra};
use crate::complex::{d_matrix, pair_d_matrix, Cochain, PairCochain, Shape, MAX_DEGREE};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, rank, solve, QMatrix, Span};
use crate::scalar::Scalar;

pub use crate::complex::pair_d_matrix as matrix_of_pair_d;

/// Dimension count for `Hⁿ` with optional representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub degree: usize,
    pub dim_cn: usize,
    pub dim_cn_next: usize,
    pub rank_prev: usize,
    pub rank_curr: usize,
    pub betti: usize,
    pub representatives: Option<Vec<PairCochain>>,
}

fn check_degree(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::DegreeOutOfRange {
            degree: n,
            min: 1,
            max: MAX_DEGREE,
        });
    }
    Ok(())
}

/// Columns of `m` as dense vectors.
fn columns(m: &QMatrix) -> Vec<Vec<Scalar>> {
    let t = m.transpose();
    (0..t.rows())
        .map(|c| {
            let mut v = crate::scalar::zeros(m.rows());
            for (r, x) in t.row(c) {
                v[*r] = x.clone();
            }
            v
        })
        .collect()
}

/// Complement of `image(prev)` inside `ker(curr)`.
fn complement(prev: Option<&QMatrix>, curr: &QMatrix) -> Vec<Vec<Scalar>> {
    let mut span = Span::new();
    if let Some(prev) = prev {
        for col in columns(prev) {
            span.insert(&col);
        }
    }
    kernel_basis(curr)
        .into_iter()
        .filter(|v| span.insert(v))
        .collect()
}

/// `dim Hⁿ` of the pair complex; `with_representatives` also returns a basis
/// of cocycles independent modulo coboundaries.
pub fn betti(
    pair: &LieDerPair,
    dermod: &DerModule,
    n: usize,
    with_representatives: bool,
) -> Result<CohomologyReport> {
    check_degree(n)?;
    let (nl, m) = (pair.dim(), dermod.mod_dim());
    let curr = pair_d_matrix(pair, dermod, n)?;
    let prev = if n >= 2 {
        Some(pair_d_matrix(pair, dermod, n - 1)?)
    } else {
        None
    };
    let rank_curr = rank(&curr);
    let rank_prev = prev.as_ref().map_or(0, rank);
    let dim_cn = PairCochain::space_dim(n, nl, m);
    let representatives = if with_representatives {
        Some(
            complement(prev.as_ref(), &curr)
                .into_iter()
                .map(|v| PairCochain::from_vector(n, nl, m, &v))
                .collect::<Result<Vec<_>>>()?,
        )
    } else {
        None
    };
    Ok(CohomologyReport {
        degree: n,
        dim_cn,
        dim_cn_next: PairCochain::space_dim(n + 1, nl, m),
        rank_prev,
        rank_curr,
        betti: dim_cn - rank_curr - rank_prev,
        representatives,
    })
}

/// `dim Hⁿ` of the plain complex `(C*(L, M), d)` with `d⁰ = 0`.
pub fn plain_betti(alg: &ThreeLieAlgebra, rep: &Representation, n: usize) -> Result<CohomologyReport> {
    check_degree(n)?;
    let (nl, m) = (alg.dim(), rep.mod_dim());
    let curr = d_matrix(alg, rep, n)?;
    let rank_curr = rank(&curr);
    let rank_prev = if n >= 2 { rank(&d_matrix(alg, rep, n - 1)?) } else { 0 };
    let dim_cn = Shape::new(n, nl, m).len();
    Ok(CohomologyReport {
        degree: n,
        dim_cn,
        dim_cn_next: Shape::new(n + 1, nl, m).len(),
        rank_prev,
        rank_curr,
        betti: dim_cn - rank_curr - rank_prev,
        representatives: None,
    })
}

fn check_pc(pair: &LieDerPair, dermod: &DerModule, pc: &PairCochain) -> Result<()> {
    if pc.alg_dim() != pair.dim() || pc.mod_dim() != dermod.mod_dim() {
        return Err(Error::dim(format!(
            "pair cochain acts on ({}→{}), expected ({}→{})",
            pc.alg_dim(),
            pc.mod_dim(),
            pair.dim(),
            dermod.mod_dim()
        )));
    }
    Ok(())
}

/// `∂ pc = 0`.
pub fn is_cocycle(pair: &LieDerPair, dermod: &DerModule, pc: &PairCochain) -> Result<bool> {
    check_pc(pair, dermod, pc)?;
    let op = pair_d_matrix(pair, dermod, pc.degree())?;
    Ok(crate::scalar::is_zero_vec(&op.apply(&pc.to_vector())))
}

/// A preimage under `∂` when `pc` is a coboundary.
///
/// Degree-1 cochains are coboundaries only when zero, since `C⁰ = 0`.
pub fn is_coboundary(pair: &LieDerPair, dermod: &DerModule, pc: &PairCochain) -> Result<Option<PairCochain>> {
    check_pc(pair, dermod, pc)?;
    let n = pc.degree();
    if n == 1 {
        return Ok(pc.is_zero().then(|| pc.clone()));
    }
    check_degree(n - 1)?;
    let op = pair_d_matrix(pair, dermod, n - 1)?;
    solve(&op, &pc.to_vector())
        .map(|x| PairCochain::from_vector(n - 1, pc.alg_dim(), pc.mod_dim(), &x))
        .transpose()
}

/// A `v` with `pc1 − pc2 = ∂v`, if any.
pub fn cohomologous(
    pair: &LieDerPair,
    dermod: &DerModule,
    pc1: &PairCochain,
    pc2: &PairCochain,
) -> Result<Option<PairCochain>> {
    is_coboundary(pair, dermod, &pc1.sub(pc2)?)
}

/// `d f = 0` in the plain complex.
pub fn is_plain_cocycle(alg: &ThreeLieAlgebra, rep: &Representation, f: &Cochain) -> Result<bool> {
    let op = d_matrix(alg, rep, f.degree())?;
    Ok(crate::scalar::is_zero_vec(&op.apply(f.coeffs())))
}

/// A preimage of `f` under `d` in the plain complex, if any.
pub fn plain_preimage(alg: &ThreeLieAlgebra, rep: &Representation, f: &Cochain) -> Result<Option<Cochain>> {
    let n = f.degree();
    if n == 1 {
        return Ok(f.is_zero().then(|| f.clone()));
    }
    check_degree(n - 1)?;
    let op = d_matrix(alg, rep, n - 1)?;
    solve(&op, f.coeffs())
        .map(|x| Cochain::from_coeffs(n - 1, f.alg_dim(), f.mod_dim(), x))
        .transpose()
}
