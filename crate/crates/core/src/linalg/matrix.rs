use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Row-major dense real matrix.
///
/// Entries are validated to be finite on construction; every derived
/// submatrix therefore inherits finiteness.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    /// Build a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(pos) = entries.iter().position(|e| !e.is_finite()) {
            return Err(Error::Invalid(format!(
                "non-finite entry {} at flat index {pos}",
                entries[pos]
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "dimensions must be positive");
        Self { rows, cols, entries: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Dimension("matrix must have at least one row".into()));
        }
        let cols = rows[0].len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        debug_assert!(i < self.rows && j < self.cols);
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        debug_assert!(i < self.rows && j < self.cols);
        self.entries[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Extract the submatrix with the given (sorted, in-range) row and
    /// column indices.
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Result<Self> {
        if row_idx.is_empty() || col_idx.is_empty() {
            return Err(Error::Dimension("submatrix selection must be non-empty".into()));
        }
        if let Some(&i) = row_idx.iter().find(|&&i| i >= self.rows) {
            return Err(Error::Dimension(format!(
                "row index {i} out of range for {} rows",
                self.rows
            )));
        }
        if let Some(&j) = col_idx.iter().find(|&&j| j >= self.cols) {
            return Err(Error::Dimension(format!(
                "column index {j} out of range for {} columns",
                self.cols
            )));
        }
        let mut out = Vec::with_capacity(row_idx.len() * col_idx.len());
        for &i in row_idx {
            for &j in col_idx {
                out.push(self.get(i, j));
            }
        }
        Self::new(row_idx.len(), col_idx.len(), out)
    }

    /// Largest absolute entry and its position (first in row-major order
    /// among ties).
    pub fn max_abs_entry(&self) -> (T, (usize, usize)) {
        let mut best = self.get(0, 0).abs();
        let mut at = (0, 0);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j).abs();
                if v > best {
                    best = v;
                    at = (i, j);
                }
            }
        }
        (best, at)
    }

    pub fn scale(&self, c: T) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&e| e * c).collect(),
        }
    }

    /// Sum of squared entries.
    pub fn frobenius_sq(&self) -> T {
        self.entries.iter().map(|&e| e * e).sum()
    }

    /// `self * x` for a vector of length `cols`.
    pub fn matvec(&self, x: &[T]) -> Vec<T> {
        debug_assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    /// `self^T * x` for a vector of length `rows`.
    pub fn tr_matvec(&self, x: &[T]) -> Vec<T> {
        debug_assert_eq!(x.len(), self.rows);
        let mut out = vec![T::zero(); self.cols];
        for i in 0..self.rows {
            let xi = x[i];
            for (j, o) in out.iter_mut().enumerate() {
                *o += self.get(i, j) * xi;
            }
        }
        out
    }

    /// Maximum symmetry defect `|a_ij - a_ji|` over all pairs. Errors on
    /// non-square input.
    pub fn symmetry_defect(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "symmetry defect requires a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let mut worst = T::zero();
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                let d = (self.get(i, j) - self.get(j, i)).abs();
                if d > worst {
                    worst = d;
                }
            }
        }
        Ok(worst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_shapes() {
        assert!(DenseMatrix::<f64>::new(0, 2, vec![]).is_err());
        assert!(DenseMatrix::new(2, 2, vec![1.0; 3]).is_err());
        assert!(DenseMatrix::new(1, 2, vec![1.0, f64::NAN]).is_err());
        assert!(DenseMatrix::new(1, 2, vec![1.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn submatrix_extracts_in_order() {
        let a = DenseMatrix::new(3, 3, (0..9).map(|v| v as f64).collect()).unwrap();
        let s = a.submatrix(&[0, 2], &[1, 2]).unwrap();
        assert_eq!(s.entries(), &[1.0, 2.0, 7.0, 8.0]);
        assert!(a.submatrix(&[3], &[0]).is_err());
        assert!(a.submatrix(&[], &[0]).is_err());
    }

    #[test]
    fn max_abs_prefers_first_in_row_major_order() {
        let a = DenseMatrix::new(2, 2, vec![-2.0, 2.0, 0.0, 1.0]).unwrap();
        let (v, at) = a.max_abs_entry();
        assert_eq!(v, 2.0);
        assert_eq!(at, (0, 0));
    }

    #[test]
    fn transpose_roundtrip() {
        let a = DenseMatrix::new(2, 3, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        assert_eq!(a.transpose().transpose(), a);
    }
}
