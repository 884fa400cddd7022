//! The degree −1 graded bracket on self-coefficient cochains.

use itertools::Itertools;
use rayon::prelude::*;

use crate::basis::{permutation_is_odd, to_sparse, unit, PairIndex};
use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::scalar::{self, Scalar};

use super::cochain::{check_degree, Cochain, Shape, MAX_COCHAIN_DEGREE};

fn check_pair(f: &Cochain, g: &Cochain) -> Result<()> {
    f.require_self()?;
    g.require_self()?;
    if f.alg_dim() != g.alg_dim() {
        return Err(Error::dim("cochains act on algebras of different dimension"));
    }
    check_degree(f.degree() + g.degree() - 1, MAX_COCHAIN_DEGREE)
}

type Shuffle = (Vec<usize>, Vec<usize>, bool);

/// Splits `0..len` into a shuffle: a sorted block of `first` positions and the
/// sorted rest, with the parity of the concatenation.
fn shuffles(len: usize, first: usize) -> Vec<Shuffle> {
    (0..len)
        .combinations(first)
        .map(|head| {
            let tail: Vec<usize> = (0..len).filter(|i| !head.contains(i)).collect();
            let seq: Vec<usize> = head.iter().chain(&tail).copied().collect();
            let odd = permutation_is_odd(&seq);
            (head, tail, odd)
        })
        .collect()
}

/// The composition `f ∘ g`.
///
/// With `p` and `q` the numbers of pair slots of `f` and `g`, the value on
/// `(X₁, …, X_{p+q}, x)` is minus
///
/// ```text
///   Σ_{k=1}^{p} (−1)^{(k−1)q} Σ_{σ ∈ S(k−1,q)} (−1)^σ
///       f(X_σ(1..k−1), g(X_σ(k..k+q−1), x_{k+q}) ∧ y_{k+q} + x_{k+q} ∧ g(…, y_{k+q}), X_{k+q+1..}, x)
/// + Σ_{σ ∈ S(p,q)} (−1)^{pq} (−1)^σ f(X_σ(1..p), g(X_σ(p+1..p+q), x)).
/// ```
///
/// The overall sign makes `d f = (−1)ⁿ [μ, f]` hold for the adjoint differential.
pub fn circ(f: &Cochain, g: &Cochain) -> Result<Cochain> {
    check_pair(f, g)?;
    let n = f.alg_dim();
    let p = f.degree() - 1;
    let q = g.degree() - 1;
    let out_shape = Shape::new(p + q + 1, n, n);
    let index = PairIndex::new(n);

    let group_a: Vec<(usize, Vec<Shuffle>)> =
        (1..=p).map(|k| (k, shuffles(k - 1 + q, k - 1))).collect();
    let group_b = shuffles(p + q, p);
    let pq_odd = (p * q) % 2 == 1;

    let values: Vec<Vec<Scalar>> = (0..out_shape.bases())
        .into_par_iter()
        .map(|base| {
            let (pairs, last) = out_shape.decode(base);
            let xy: Vec<(usize, usize)> = pairs.iter().map(|&c| index.pair(c)).collect();
            let mut acc = scalar::zeros(n);
            for (k, shuffles) in &group_a {
                let k = *k;
                let (xk, yk) = xy[k + q - 1];
                let tail_slots: Vec<SparseVec> = pairs[k + q..].iter().map(|&c| unit(c)).collect();
                let outer_odd = ((k - 1) * q) % 2 == 1;
                for (head, g_block, odd) in shuffles {
                    let g_pairs: Vec<usize> = g_block.iter().map(|&i| pairs[i]).collect();
                    let gx = to_sparse(g.value(&g_pairs, xk));
                    let gy = to_sparse(g.value(&g_pairs, yk));
                    let mut w = index.wedge(&gx, &unit(yk));
                    w.extend(index.wedge(&unit(xk), &gy));
                    let w = crate::linalg::sparse::normalize(w);
                    if w.is_empty() {
                        continue;
                    }
                    let mut slots: Vec<SparseVec> = head.iter().map(|&i| unit(pairs[i])).collect();
                    slots.push(w);
                    slots.extend(tail_slots.iter().cloned());
                    let v = f.eval_sparse(&slots, &unit(last));
                    let sign = if outer_odd ^ odd { scalar::int(-1) } else { scalar::one() };
                    scalar::add_scaled(&mut acc, &sign, &v);
                }
            }
            for (head, g_block, odd) in &group_b {
                let g_pairs: Vec<usize> = g_block.iter().map(|&i| pairs[i]).collect();
                let inner = to_sparse(g.value(&g_pairs, last));
                if inner.is_empty() {
                    continue;
                }
                let slots: Vec<SparseVec> = head.iter().map(|&i| unit(pairs[i])).collect();
                let v = f.eval_sparse(&slots, &inner);
                let sign = if pq_odd ^ odd { scalar::int(-1) } else { scalar::one() };
                scalar::add_scaled(&mut acc, &sign, &v);
            }
            acc.iter().map(|a| -a).collect()
        })
        .collect();
    Cochain::from_coeffs(p + q + 1, n, n, values.concat())
}

/// `[f, g] = f ∘ g − (−1)^{pq} g ∘ f`, with `p`, `q` the numbers of pair slots.
pub fn bracket(f: &Cochain, g: &Cochain) -> Result<Cochain> {
    let p = f.degree() - 1;
    let q = g.degree() - 1;
    let fg = circ(f, g)?;
    let gf = circ(g, f)?;
    if (p * q).is_multiple_of(2) {
        fg.sub(&gf)
    } else {
        fg.add(&gf)
    }
}
