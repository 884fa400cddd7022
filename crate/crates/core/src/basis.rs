//! Index bookkeeping for ordered pairs `(i < j)` of basis vectors.

use num_traits::Zero;

use crate::linalg::SparseVec;
use crate::scalar::Scalar;

/// Lexicographic ranking of the pairs `(i, j)`, `0 <= i < j < dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairIndex {
    dim: usize,
    pairs: Vec<(usize, usize)>,
    codes: Vec<Option<usize>>,
}

impl PairIndex {
    pub fn new(dim: usize) -> Self {
        let mut pairs = Vec::new();
        let mut codes = vec![None; dim * dim];
        for i in 0..dim {
            for j in i + 1..dim {
                codes[i * dim + j] = Some(pairs.len());
                pairs.push((i, j));
            }
        }
        Self { dim, pairs, codes }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of pairs, `dim·(dim−1)/2`.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pair(&self, code: usize) -> (usize, usize) {
        self.pairs[code]
    }

    /// Code of `(i, j)` for `i < j`.
    pub fn code(&self, i: usize, j: usize) -> Option<usize> {
        if i < self.dim && j < self.dim {
            self.codes[i * self.dim + j]
        } else {
            None
        }
    }

    /// `e_i ∧ e_j` as `(code, ±1)`, or `None` when `i == j`.
    pub fn wedge_basis(&self, i: usize, j: usize) -> Option<(usize, bool)> {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.code(i, j).map(|c| (c, false)),
            std::cmp::Ordering::Greater => self.code(j, i).map(|c| (c, true)),
            std::cmp::Ordering::Equal => None,
        }
    }

    /// `x ∧ y` for sparse vectors, in the pair basis.
    pub fn wedge(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc: std::collections::BTreeMap<usize, Scalar> = Default::default();
        for (i, a) in x {
            for (j, b) in y {
                if let Some((code, neg)) = self.wedge_basis(*i, *j) {
                    let v = a * b;
                    let e = acc.entry(code).or_insert_with(Scalar::zero);
                    if neg {
                        *e -= v;
                    } else {
                        *e += v;
                    }
                }
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }
}

pub fn to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn unit(i: usize) -> SparseVec {
    vec![(i, num_traits::One::one())]
}

/// Parity of a permutation given as a sequence of distinct values.
pub fn permutation_is_odd(seq: &[usize]) -> bool {
    let mut inversions = 0;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[a] > seq[b] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn codes_are_lexicographic() {
        let p = PairIndex::new(4);
        assert_eq!(p.len(), 6);
        assert_eq!(p.code(0, 1), Some(0));
        assert_eq!(p.code(0, 3), Some(2));
        assert_eq!(p.code(1, 2), Some(3));
        assert_eq!(p.code(2, 3), Some(5));
        assert_eq!(p.code(2, 1), None);
        for c in 0..p.len() {
            let (i, j) = p.pair(c);
            assert_eq!(p.code(i, j), Some(c));
        }
    }

    #[test]
    fn wedge_is_antisymmetric() {
        let p = PairIndex::new(3);
        let x = vec![(0, int(1)), (1, int(2))];
        let y = vec![(1, int(1)), (2, int(-1))];
        let xy = p.wedge(&x, &y);
        let yx: SparseVec = p.wedge(&y, &x).into_iter().map(|(c, v)| (c, -v)).collect();
        assert_eq!(xy, yx);
        assert!(p.wedge(&x, &x).is_empty());
    }
}
