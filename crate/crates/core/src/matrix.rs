//! Dense matrices over a [`FieldDesc`] and the exact linear algebra kernel.
//!
//! Matrices with zero rows or zero columns are legal and stand for maps from
//! or to the zero vector space.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldDesc, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldDesc,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivot_columns: Vec<usize>,
    /// Product of the determinants of the elementary row operations applied.
    pub row_ops_det: Scalar,
}

impl Matrix {
    pub fn new(field: FieldDesc, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch("entry count differs from rows*cols"));
        }
        if data.iter().any(|s| s.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(Matrix { field, rows, cols, data })
    }

    /// Row-major integer entries mapped into `field`.
    pub fn from_i64(field: FieldDesc, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count differs from rows*cols");
        Matrix {
            field,
            rows,
            cols,
            data: entries.iter().map(|&n| field.from_i64(n)).collect(),
        }
    }

    pub fn zeros(field: FieldDesc, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: alloc::vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldDesc, n: usize) -> Self {
        Self::scalar(field, n, &field.one())
    }

    /// `c` times the `n x n` identity.
    pub fn scalar(field: FieldDesc, n: usize, c: &Scalar) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    /// Builds a matrix entry by entry.
    pub fn from_fn(
        field: FieldDesc,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { field, rows, cols, data }
    }

    pub fn field(&self) -> FieldDesc {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        debug_assert_eq!(value.field(), self.field);
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let e = self.get(r, c);
                    if r == c {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| e * c).collect(),
        }
    }

    /// Columns with the given indices, in that order.
    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, idx.len(), |r, c| self.get(r, idx[c]).clone())
    }

    /// The block `rows x cols` starting at `(r0, c0)`.
    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        Matrix::from_fn(self.field, rows, cols, |r, c| self.get(r0 + r, c0 + c).clone())
    }

    /// Horizontal concatenation. All parts must have `rows` rows.
    pub fn hstack(field: FieldDesc, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut c0 = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack: row count mismatch");
            out.paste(0, c0, m);
            c0 += m.cols;
        }
        out
    }

    /// Vertical concatenation. All parts must have `cols` columns.
    pub fn vstack(field: FieldDesc, cols: usize, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut r0 = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "vstack: column count mismatch");
            out.paste(r0, 0, m);
            r0 += m.rows;
        }
        out
    }

    pub fn block_diag(field: FieldDesc, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            out.paste(r0, c0, m);
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }

    /// A block matrix with block rows of sizes `row_dims` and block columns of
    /// sizes `col_dims`; `blocks` lists the nonzero `(block_row, block_col, m)`.
    pub fn from_blocks(
        field: FieldDesc,
        row_dims: &[usize],
        col_dims: &[usize],
        blocks: &[(usize, usize, &Matrix)],
    ) -> Matrix {
        let offsets = |dims: &[usize]| {
            let mut acc = 0;
            dims.iter()
                .map(|&d| {
                    let o = acc;
                    acc += d;
                    o
                })
                .collect::<Vec<_>>()
        };
        let (ro, co) = (offsets(row_dims), offsets(col_dims));
        let mut out = Matrix::zeros(field, row_dims.iter().sum(), col_dims.iter().sum());
        for &(i, j, m) in blocks {
            assert_eq!(
                m.shape(),
                (row_dims[i], col_dims[j]),
                "block ({i}, {j}) has the wrong shape"
            );
            out.paste(ro[i], co[j], m);
        }
        out
    }

    /// Overwrites the block at `(r0, c0)` with `m`.
    pub fn paste(&mut self, r0: usize, c0: usize, m: &Matrix) {
        assert!(r0 + m.rows <= self.rows && c0 + m.cols <= self.cols, "paste out of bounds");
        for r in 0..m.rows {
            for c in 0..m.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = m.get(r, c).clone();
            }
        }
    }

    pub fn matmul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.field, rhs.field, "matmul: field mismatch");
        assert_eq!(self.cols, rhs.rows, "matmul: inner dimension mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    fn zip_with(&self, rhs: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Matrix {
        assert_eq!(self.field, rhs.field, "field mismatch");
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// Reduced row echelon form by Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut det = self.field.one();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(found) = (prow..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if found != prow {
                m.swap_rows(found, prow);
                det = -det;
            }
            let pivot = m.get(prow, col).clone();
            if !pivot.is_one() {
                let inv = pivot.inv().expect("nonzero pivot");
                for c in col..m.cols {
                    let idx = prow * m.cols + c;
                    m.data[idx] = &m.data[idx] * &inv;
                }
                det = &det * &inv;
            }
            for r in 0..m.rows {
                if r == prow {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let sub = &factor * m.get(prow, c);
                    if sub.is_zero() {
                        continue;
                    }
                    let idx = r * m.cols + c;
                    m.data[idx] = &m.data[idx] - &sub;
                }
            }
            pivots.push(col);
            prow += 1;
        }
        Rref {
            reduced: m,
            pivot_columns: pivots,
            row_ops_det: det,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivot_columns.len()
    }

    pub fn det(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let r = self.rref();
        if r.pivot_columns.len() < self.rows {
            return Ok(self.field.zero());
        }
        // rref(m) = E m = I, so det(m) = det(E)^{-1}.
        Ok(r.row_ops_det.inv().expect("elementary operations are invertible"))
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let aug = Matrix::hstack(self.field, n, &[self, &Matrix::identity(self.field, n)]);
        let r = aug.rref();
        if n > 0 && r.pivot_columns.get(n - 1) != Some(&(n - 1)) {
            return Err(Error::NotInvertible);
        }
        Ok(r.reduced.submatrix(0, n, n, n))
    }

    /// One solution `X` of `self * X = b`, with all free variables set to zero.
    pub fn solve_any(&self, b: &Matrix) -> Result<Matrix> {
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch("solve_any: a.rows != b.rows"));
        }
        if self.field != b.field {
            return Err(Error::FieldMismatch);
        }
        let n = self.cols;
        let aug = Matrix::hstack(self.field, self.rows, &[self, b]);
        let r = aug.rref();
        if r.pivot_columns.iter().any(|&c| c >= n) {
            return Err(Error::Inconsistent);
        }
        let mut x = Matrix::zeros(self.field, n, b.cols);
        for (row, &pc) in r.pivot_columns.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.reduced.get(row, n + j).clone());
            }
        }
        Ok(x)
    }

    /// The pivot columns of `self` (original entries): a basis of the image.
    pub fn column_space_basis(&self) -> Matrix {
        let pivots = self.rref().pivot_columns;
        self.select_columns(&pivots)
    }

    /// The reduced column echelon basis of the image. Unlike
    /// [`column_space_basis`](Self::column_space_basis) it depends only on the
    /// subspace, not on the spanning set.
    pub fn image_echelon_basis(&self) -> Matrix {
        let r = self.transpose().rref();
        let k = r.pivot_columns.len();
        r.reduced.submatrix(0, 0, k, self.rows).transpose()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (c, e) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "] ({}x{} over {})", self.rows, self.cols, self.field)
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.matmul(rhs)
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| -e).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldDesc = FieldDesc::Rationals;
    const F5: FieldDesc = FieldDesc::Prime(5);

    fn m(field: FieldDesc, rows: usize, cols: usize, e: &[i64]) -> Matrix {
        Matrix::from_i64(field, rows, cols, e)
    }

    #[test]
    fn rref_examples() {
        let r = m(Q, 2, 2, &[1, 2, 2, 4]).rref();
        assert_eq!(r.pivot_columns, [0]);
        assert_eq!(r.reduced, m(Q, 2, 2, &[1, 2, 0, 0]));

        let id = Matrix::identity(Q, 3);
        let r = id.rref();
        assert_eq!(r.pivot_columns, [0, 1, 2]);
        assert_eq!(r.reduced, id);

        let r = m(F5, 2, 2, &[0, 1, 1, 0]).rref();
        assert_eq!(r.pivot_columns, [0, 1]);
        assert!(r.reduced.is_identity());
    }

    #[test]
    fn det_examples() {
        assert_eq!(m(Q, 2, 2, &[2, 0, 0, 3]).det().unwrap(), Q.from_i64(6));
        assert_eq!(m(Q, 2, 2, &[0, 1, 1, 0]).det().unwrap(), Q.from_i64(-1));
        assert_eq!(m(F5, 2, 2, &[2, 0, 0, 3]).det().unwrap(), F5.one());
        assert_eq!(m(Q, 2, 2, &[1, 2, 2, 4]).det().unwrap(), Q.zero());
        assert_eq!(Matrix::zeros(Q, 0, 0).det().unwrap(), Q.one());
        assert!(matches!(
            m(Q, 1, 2, &[1, 2]).det(),
            Err(Error::NonSquare { rows: 1, cols: 2 })
        ));
    }

    #[test]
    fn solve_examples() {
        let x = m(Q, 1, 1, &[2]).solve_any(&m(Q, 1, 1, &[4])).unwrap();
        assert_eq!(x, m(Q, 1, 1, &[2]));
        let x = m(Q, 1, 2, &[1, -1]).solve_any(&m(Q, 1, 1, &[1])).unwrap();
        assert_eq!(x, m(Q, 2, 1, &[1, 0]));
        assert_eq!(
            m(Q, 1, 1, &[0]).solve_any(&m(Q, 1, 1, &[1])),
            Err(Error::Inconsistent)
        );
        assert!(matches!(
            m(Q, 1, 1, &[1]).solve_any(&m(Q, 2, 1, &[1, 1])),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn column_space_examples() {
        assert_eq!(m(Q, 2, 2, &[1, 2, 2, 4]).column_space_basis(), m(Q, 2, 1, &[1, 2]));
        assert_eq!(Matrix::identity(Q, 2).column_space_basis(), Matrix::identity(Q, 2));
        let z = Matrix::zeros(Q, 2, 3).column_space_basis();
        assert_eq!(z.shape(), (2, 0));
    }

    #[test]
    fn echelon_basis_is_canonical() {
        let a = m(Q, 3, 2, &[2, 1, 4, 0, 0, 3]);
        let b = &a * &m(Q, 2, 2, &[1, 1, 0, 5]);
        assert_eq!(a.image_echelon_basis(), b.image_echelon_basis());
        assert!(m(Q, 2, 2, &[2, 1, 1, 1]).image_echelon_basis().is_identity());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(Q, 3, 3, &[2, 1, 0, 0, 1, 3, 1, 0, 1]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        assert_eq!(m(Q, 2, 2, &[1, 2, 2, 4]).inverse(), Err(Error::NotInvertible));
        assert_eq!(Matrix::zeros(Q, 0, 0).inverse().unwrap().shape(), (0, 0));
    }

    #[test]
    fn empty_matrices_compose() {
        let a = Matrix::zeros(Q, 2, 0);
        let b = Matrix::zeros(Q, 0, 3);
        assert_eq!(&a * &b, Matrix::zeros(Q, 2, 3));
        assert_eq!(a.rank(), 0);
    }
}
