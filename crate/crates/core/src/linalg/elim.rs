//! Fraction-free sparse row elimination.
//!
//! Rows are cleared of denominators and kept primitive (content 1). A row is
//! reduced against a pivot row by the integer combination
//! `(b/g)·row − (a/g)·pivot`, `g = gcd(a, b)`, so no fractions appear until
//! back substitution.
//!
//! Pivot rule: columns are swept left to right; among the rows whose leading
//! entry sits in the current column, the pivot is the one with the smallest
//! absolute leading value, ties broken by the earliest row in bucket order.
//! The rule is fixed, so results are deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{self, Scalar};

use super::{QMatrix, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq)]
struct IntRow(Vec<(usize, BigInt)>);

impl IntRow {
    fn from_rational(row: &[(usize, Scalar)]) -> Self {
        let mut lcm = BigInt::one();
        for (_, v) in row {
            lcm = lcm.lcm(v.denom());
        }
        let mut out = IntRow(
            row.iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (*c, v.numer() * (&lcm / v.denom())))
                .collect(),
        );
        out.make_primitive();
        out
    }

    fn lead(&self) -> Option<usize> {
        self.0.first().map(|(c, _)| *c)
    }

    fn lead_value(&self) -> &BigInt {
        &self.0[0].1
    }

    fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn make_primitive(&mut self) {
        let mut g = BigInt::zero();
        for (_, v) in &self.0 {
            g = g.gcd(v);
            if g.is_one() {
                break;
            }
        }
        if !g.is_zero() && !g.is_one() {
            for (_, v) in &mut self.0 {
                *v /= &g;
            }
        }
        if let Some((_, v)) = self.0.first() {
            if v.is_negative() {
                for (_, v) in &mut self.0 {
                    *v = -&*v;
                }
            }
        }
    }

    /// Cancels the leading entry of `self` using `pivot`, which must lead in
    /// the same column.
    fn reduce_by(&self, pivot: &IntRow) -> IntRow {
        let a = self.lead_value();
        let b = pivot.lead_value();
        let g = a.gcd(b);
        let ka = b / &g;
        let kp = a / &g;
        let (x, y) = (&self.0, &pivot.0);
        let mut out = Vec::with_capacity(x.len() + y.len());
        let (mut i, mut j) = (1, 1);
        while i < x.len() || j < y.len() {
            let ci = x.get(i).map(|e| e.0).unwrap_or(usize::MAX);
            let cj = y.get(j).map(|e| e.0).unwrap_or(usize::MAX);
            match ci.cmp(&cj) {
                Ordering::Less => {
                    out.push((ci, &ka * &x[i].1));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((cj, -(&kp * &y[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = &ka * &x[i].1 - &kp * &y[j].1;
                    if !v.is_zero() {
                        out.push((ci, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        let mut row = IntRow(out);
        row.make_primitive();
        row
    }

    fn get(&self, col: usize) -> Option<&BigInt> {
        self.0
            .binary_search_by_key(&col, |(c, _)| *c)
            .ok()
            .map(|i| &self.0[i].1)
    }
}

struct Echelon {
    ncols: usize,
    /// `(pivot column, row)` in increasing column order.
    pivots: Vec<(usize, IntRow)>,
    inconsistent: bool,
}

/// Row-reduces `rows`. When `augmented`, column `ncols` is a right-hand side
/// that is never chosen as a pivot.
fn echelon(rows: impl IntoIterator<Item = IntRow>, ncols: usize, augmented: bool) -> Echelon {
    let width = ncols + usize::from(augmented);
    let mut buckets: Vec<Vec<IntRow>> = vec![Vec::new(); width];
    for row in rows {
        if let Some(c) = row.lead() {
            buckets[c].push(row);
        }
    }
    let mut pivots = Vec::new();
    for c in 0..ncols {
        let mut bucket = std::mem::take(&mut buckets[c]);
        if bucket.is_empty() {
            continue;
        }
        let best = bucket
            .iter()
            .enumerate()
            .min_by(|(i, a), (j, b)| {
                a.lead_value()
                    .abs()
                    .cmp(&b.lead_value().abs())
                    .then(i.cmp(j))
            })
            .map(|(i, _)| i)
            .unwrap_or(0);
        let pivot = bucket.swap_remove(best);
        for row in bucket {
            let reduced = row.reduce_by(&pivot);
            if let Some(lead) = reduced.lead() {
                buckets[lead].push(reduced);
            }
        }
        pivots.push((c, pivot));
    }
    let inconsistent = augmented && !buckets[ncols].is_empty();
    Echelon {
        ncols,
        pivots,
        inconsistent,
    }
}

impl Echelon {
    fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Solves by back substitution with the given free-variable values;
    /// the right-hand side is read from column `ncols` when present.
    fn back_substitute(&self, x: &mut [Scalar]) {
        for (c, row) in self.pivots.iter().rev() {
            let mut acc = match row.get(self.ncols) {
                Some(v) => Scalar::from_integer(v.clone()),
                None => scalar::zero(),
            };
            for (j, v) in &row.0[1..] {
                if *j >= self.ncols {
                    break;
                }
                if !x[*j].is_zero() {
                    acc -= &x[*j] * Scalar::from_integer(v.clone());
                }
            }
            x[*c] = acc / Scalar::from_integer(row.lead_value().clone());
        }
    }
}

fn int_rows(m: &QMatrix) -> impl Iterator<Item = IntRow> + '_ {
    m.row_data().iter().map(|r| IntRow::from_rational(r))
}

/// Exact rank.
pub fn rank(m: &QMatrix) -> usize {
    if m.rows() > m.cols() {
        let t = m.transpose();
        echelon(int_rows(&t), t.cols(), false).rank()
    } else {
        echelon(int_rows(m), m.cols(), false).rank()
    }
}

/// Basis of `{x : m·x = 0}`, one vector per free column, in increasing order
/// of the free column.
pub fn kernel_basis(m: &QMatrix) -> Vec<Vec<Scalar>> {
    let ech = echelon(int_rows(m), m.cols(), false);
    let mut is_pivot = vec![false; m.cols()];
    for (c, _) in &ech.pivots {
        is_pivot[*c] = true;
    }
    (0..m.cols())
        .filter(|c| !is_pivot[*c])
        .map(|free| {
            let mut x = scalar::zeros(m.cols());
            x[free] = scalar::one();
            ech.back_substitute(&mut x);
            x
        })
        .collect()
}

/// One solution of `m·x = b` (free variables set to zero), or `None` when the
/// system is inconsistent.
pub fn solve(m: &QMatrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(b.len(), m.rows(), "right-hand side length does not match rows");
    let n = m.cols();
    let rows = m.row_data().iter().zip(b).map(|(row, rhs)| {
        let mut r: SparseVec = row.clone();
        if !rhs.is_zero() {
            r.push((n, rhs.clone()));
        }
        IntRow::from_rational(&r)
    });
    let ech = echelon(rows, n, true);
    if ech.inconsistent {
        return None;
    }
    let mut x = scalar::zeros(n);
    ech.back_substitute(&mut x);
    Some(x)
}

/// Incrementally grown row space, used to pick vectors independent of a
/// given subspace.
#[derive(Clone, Debug, Default)]
pub struct Span {
    pivots: BTreeMap<usize, IntRow>,
}

impl Span {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    fn reduce(&self, mut row: IntRow) -> IntRow {
        while let Some(lead) = row.lead() {
            match self.pivots.get(&lead) {
                Some(p) => row = row.reduce_by(p),
                None => break,
            }
        }
        row
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(IntRow::from_rational(&dense_to_sparse(v))).is_empty()
    }

    /// Adds `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let row = self.reduce(IntRow::from_rational(&dense_to_sparse(v)));
        match row.lead() {
            Some(lead) => {
                self.pivots.insert(lead, row);
                true
            }
            None => false,
        }
    }
}

fn dense_to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::LinearMap;
    use crate::scalar::{frac, int};

    fn q(rows: usize, cols: usize, v: &[i64]) -> QMatrix {
        QMatrix::from_dense(&LinearMap::from_i64(rows, cols, v))
    }

    #[test]
    fn identity_has_full_rank_and_trivial_kernel() {
        let m = QMatrix::from_dense(&LinearMap::identity(5));
        assert_eq!(rank(&m), 5);
        assert!(kernel_basis(&m).is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let m = QMatrix::zeros(3, 4);
        assert_eq!(rank(&m), 0);
        assert_eq!(kernel_basis(&m).len(), 4);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = q(2, 4, &[1, 2, 0, -1, 3, 6, 1, 0]);
        let ker = kernel_basis(&m);
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(scalar::is_zero_vec(&m.apply(&v)));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = q(2, 2, &[1, 1, 2, 2]);
        assert!(solve(&m, &[int(1), int(3)]).is_none());
        let x = solve(&m, &[int(1), int(2)]).unwrap();
        assert_eq!(m.apply(&x), vec![int(1), int(2)]);
    }

    #[test]
    fn solve_with_fractions() {
        let m = QMatrix::from_dense(
            &LinearMap::new(2, 2, vec![frac(1, 2), frac(1, 3), int(0), frac(2, 5)]).unwrap(),
        );
        let b = vec![int(1), int(1)];
        let x = solve(&m, &b).unwrap();
        assert_eq!(m.apply(&x), b);
    }

    #[test]
    fn span_membership() {
        let mut s = Span::new();
        assert!(s.insert(&[int(1), int(2), int(0)]));
        assert!(s.insert(&[int(0), int(1), int(1)]));
        assert!(!s.insert(&[int(2), int(5), int(1)]));
        assert!(s.contains(&[int(1), int(3), int(1)]));
        assert!(!s.contains(&[int(0), int(0), int(1)]));
        assert_eq!(s.dim(), 2);
    }
}
