use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

use super::LinearMap;

/// Sorted `(index, value)` pairs with no explicit zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Sparse rational matrix stored as sorted rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    /// Builds a matrix from rows; entries are sorted and duplicates summed.
    pub fn from_rows(cols: usize, rows: Vec<SparseVec>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len());
        for (r, row) in rows.into_iter().enumerate() {
            if let Some(&(c, _)) = row.iter().find(|(c, _)| *c >= cols) {
                return Err(Error::dim(format!("row {r} has column {c} >= {cols}")));
            }
            data.push(normalize(row));
        }
        Ok(Self {
            rows: data.len(),
            cols,
            data,
        })
    }

    pub fn from_dense(m: &LinearMap) -> Self {
        let data = (0..m.rows())
            .map(|r| {
                m.row(r)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.clone()))
                    .collect()
            })
            .collect();
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data,
        }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        let mut data: Vec<SparseVec> = vec![Vec::new(); rows];
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::dim(format!("column {c} has length {} not {rows}", col.len())));
            }
            for (r, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    data[r].push((c, v.clone()));
                }
            }
        }
        Ok(Self {
            rows,
            cols: columns.len(),
            data,
        })
    }

    pub fn to_dense(&self) -> LinearMap {
        let mut m = LinearMap::zeros(self.rows, self.cols);
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                m.set(r, *c, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.data[r]
    }

    pub fn row_data(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        match self.data[r].binary_search_by_key(&c, |(k, _)| *k) {
            Ok(i) => self.data[r][i].1.clone(),
            Err(_) => scalar::zero(),
        }
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length does not match matrix columns");
        self.data
            .iter()
            .map(|row| {
                let mut acc = scalar::zero();
                for (c, a) in row {
                    let b = &v[*c];
                    if !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        let mut data: Vec<SparseVec> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                data[*c].push((r, v.clone()));
            }
        }
        QMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// `self · other`
    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::dim(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: std::collections::BTreeMap<usize, Scalar> = Default::default();
                for (k, a) in row {
                    for (c, b) in &other.data[*k] {
                        *acc.entry(*c).or_insert_with(scalar::zero) += a * b;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Ok(QMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn scale(&self, k: &Scalar) -> QMatrix {
        if k.is_zero() {
            return QMatrix::zeros(self.rows, self.cols);
        }
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|row| row.iter().map(|(c, v)| (*c, v * k)).collect())
                .collect(),
        }
    }

    pub fn sub(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::dim("matrix shapes differ"));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut row = a.clone();
                row.extend(b.iter().map(|(c, v)| (*c, -v)));
                normalize(row)
            })
            .collect();
        Ok(QMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Block matrix `[[a, b], [c, d]]`; `None` blocks are zero.
    pub fn block2(
        top_rows: usize,
        bottom_rows: usize,
        left_cols: usize,
        right_cols: usize,
        blocks: [Option<&QMatrix>; 4],
    ) -> Result<QMatrix> {
        let shapes = [
            (top_rows, left_cols),
            (top_rows, right_cols),
            (bottom_rows, left_cols),
            (bottom_rows, right_cols),
        ];
        for (b, (r, c)) in blocks.iter().zip(shapes) {
            if let Some(m) = b {
                if m.rows != r || m.cols != c {
                    return Err(Error::dim(format!(
                        "block is {}x{}, expected {r}x{c}",
                        m.rows, m.cols
                    )));
                }
            }
        }
        let mut data: Vec<SparseVec> = vec![Vec::new(); top_rows + bottom_rows];
        for (i, b) in blocks.iter().enumerate() {
            let Some(m) = b else { continue };
            let row_off = if i < 2 { 0 } else { top_rows };
            let col_off = if i % 2 == 0 { 0 } else { left_cols };
            for (r, row) in m.data.iter().enumerate() {
                data[row_off + r].extend(row.iter().map(|(c, v)| (c + col_off, v.clone())));
            }
        }
        for row in &mut data {
            row.sort_by_key(|(c, _)| *c);
        }
        Ok(QMatrix {
            rows: top_rows + bottom_rows,
            cols: left_cols + right_cols,
            data,
        })
    }
}

pub(crate) fn normalize(mut row: SparseVec) -> SparseVec {
    row.sort_by_key(|(c, _)| *c);
    let mut out: SparseVec = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn from_rows_merges_duplicates() {
        let m = QMatrix::from_rows(3, vec![vec![(2, int(1)), (0, int(2)), (2, int(-1))]]).unwrap();
        assert_eq!(m.row(0), &vec![(0, int(2))]);
    }

    #[test]
    fn product_matches_dense() {
        let a = LinearMap::from_i64(2, 3, &[1, 0, 2, -1, 3, 0]);
        let b = LinearMap::from_i64(3, 2, &[0, 1, 1, 1, 2, 0]);
        let sparse = QMatrix::from_dense(&a).mul(&QMatrix::from_dense(&b)).unwrap();
        assert_eq!(sparse.to_dense(), a.compose(&b).unwrap());
    }

    #[test]
    fn block_layout() {
        let one = QMatrix::from_dense(&LinearMap::identity(1));
        let m = QMatrix::block2(1, 1, 1, 1, [None, Some(&one), Some(&one), None]).unwrap();
        assert_eq!(m.to_dense(), LinearMap::from_i64(2, 2, &[0, 1, 1, 0]));
    }
}
