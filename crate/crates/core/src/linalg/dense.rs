use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

use super::{elim, QMatrix};

/// Dense matrix of a linear map, row-major.
///
/// Column `c` holds the image of the `c`-th basis vector of the source.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearMap {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl LinearMap {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::dim(format!(
                "{rows}x{cols} map needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::dim(format!(
                    "row {} has {} entries, expected {cols}",
                    r + 1,
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Self::new(n, cols, entries)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self { rows, cols, entries }
    }

    pub fn from_i64(rows: usize, cols: usize, values: &[i64]) -> Self {
        assert_eq!(values.len(), rows * cols);
        Self {
            rows,
            cols,
            entries: values.iter().map(|&v| scalar::int(v)).collect(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: scalar::zeros(rows * cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { scalar::one() } else { scalar::zero() })
    }

    pub fn diagonal(values: &[Scalar]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |r, c| if r == c { values[r].clone() } else { scalar::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length does not match map source");
        (0..self.rows)
            .map(|r| {
                let mut acc = scalar::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// Image of the `c`-th basis vector.
    pub fn apply_basis(&self, c: usize) -> Vec<Scalar> {
        self.column(c)
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        if self.cols != other.rows {
            return Err(Error::dim(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(LinearMap::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = scalar::zero();
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                let b = other.get(k, c);
                if !b.is_zero() {
                    acc += a * b;
                }
            }
            acc
        }))
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap> {
        self.check_same_shape(other)?;
        Ok(LinearMap {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &LinearMap) -> Result<LinearMap> {
        self.check_same_shape(other)?;
        Ok(LinearMap {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, k: &Scalar) -> LinearMap {
        LinearMap {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * k).collect(),
        }
    }

    pub fn transpose(&self) -> LinearMap {
        LinearMap::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn rank(&self) -> usize {
        elim::rank(&QMatrix::from_dense(self))
    }

    /// Exact inverse, `None` when singular or not square.
    pub fn inverse(&self) -> Option<LinearMap> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.entries.clone();
        let mut inv = LinearMap::identity(n).entries;
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r * n + col].is_zero())?;
            if pivot != col {
                for k in 0..n {
                    a.swap(pivot * n + k, col * n + k);
                    inv.swap(pivot * n + k, col * n + k);
                }
            }
            let p = a[col * n + col].clone();
            for k in 0..n {
                a[col * n + k] /= &p;
                inv[col * n + k] /= &p;
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let factor = a[r * n + col].clone();
                for k in 0..n {
                    let t = &factor * &a[col * n + k];
                    a[r * n + k] -= t;
                    let t = &factor * &inv[col * n + k];
                    inv[r * n + k] -= t;
                }
            }
        }
        Some(LinearMap {
            rows: n,
            cols: n,
            entries: inv,
        })
    }

    /// Block diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &LinearMap) -> LinearMap {
        let (r1, c1) = (self.rows, self.cols);
        LinearMap::from_fn(r1 + other.rows, c1 + other.cols, |r, c| {
            if r < r1 && c < c1 {
                self.get(r, c).clone()
            } else if r >= r1 && c >= c1 {
                other.get(r - r1, c - c1).clone()
            } else {
                scalar::zero()
            }
        })
    }

    fn check_same_shape(&self, other: &LinearMap) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::dim(format!(
                "shape {}x{} differs from {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LinearMap {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(scalar::format).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn inverse_round_trip() {
        let a = LinearMap::from_i64(3, 3, &[2, 1, 0, 0, 1, 3, 1, 0, 1]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.compose(&inv).unwrap(), LinearMap::identity(3));
        assert_eq!(inv.compose(&a).unwrap(), LinearMap::identity(3));
    }

    #[test]
    fn singular_has_no_inverse() {
        let a = LinearMap::from_i64(2, 2, &[1, 2, 2, 4]);
        assert!(a.inverse().is_none());
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn apply_and_compose_agree() {
        let a = LinearMap::from_i64(2, 3, &[1, 0, -1, 2, 1, 0]);
        let b = LinearMap::new(3, 1, vec![frac(1, 2), int(3), int(-1)]).unwrap();
        let v = a.compose(&b).unwrap().column(0);
        assert_eq!(v, a.apply(&b.column(0)));
        assert_eq!(v, vec![frac(3, 2), int(4)]);
    }

    #[test]
    fn rejects_wrong_entry_count() {
        assert!(LinearMap::new(2, 2, vec![int(1)]).is_err());
    }
}
