//! Dense matrices over a Euclidean domain.
//!
//! Matrices act on column vectors: a map `R^n -> R^m` is an `m x n` matrix,
//! and composition is matrix product in the usual order. Zero rows or columns
//! are legal; a `0 x n` or `m x 0` matrix is the unique map to or from the
//! zero module.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::ring::EuclideanDomain;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>, // row major
}

impl<R> Matrix<R> {
    pub fn new(rows: usize, cols: usize, data: Vec<R>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &R {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
}

impl<R: EuclideanDomain> Matrix<R> {

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Build from rows of `i64` entries; handy in tests.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Matrix {
            rows,
            cols,
            data: entries.iter().map(|&n| R::from_i64(n)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(R::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j).mul(c))
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn from_columns(rows: usize, columns: &[Vec<R>]) -> Self {
        for c in columns {
            assert_eq!(c.len(), rows);
        }
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    /// Keep the columns with the given indices, in order.
    pub fn select_columns(&self, indices: &[usize]) -> Self {
        Self::from_fn(self.rows, indices.len(), |i, j| self.at(i, indices[j]).clone())
    }

    /// Rows `lo..hi` as a new matrix.
    pub fn row_slice(&self, lo: usize, hi: usize) -> Self {
        assert!(lo <= hi && hi <= self.rows);
        Self::from_fn(hi - lo, self.cols, |i, j| self.at(lo + i, j).clone())
    }

    pub fn hconcat(parts: &[&Matrix<R>]) -> Self {
        assert!(!parts.is_empty());
        let rows = parts[0].rows;
        assert!(parts.iter().all(|p| p.rows == rows), "hconcat row mismatch");
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut m = Self::zero(rows, cols);
        let mut off = 0;
        for p in parts {
            for i in 0..rows {
                for j in 0..p.cols {
                    m.set(i, off + j, p.at(i, j).clone());
                }
            }
            off += p.cols;
        }
        m
    }

    pub fn vconcat(parts: &[&Matrix<R>]) -> Self {
        assert!(!parts.is_empty());
        let cols = parts[0].cols;
        assert!(parts.iter().all(|p| p.cols == cols), "vconcat col mismatch");
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut m = Self::zero(rows, cols);
        let mut off = 0;
        for p in parts {
            for i in 0..p.rows {
                for j in 0..cols {
                    m.set(off + i, j, p.at(i, j).clone());
                }
            }
            off += p.rows;
        }
        m
    }

    /// Assemble a block matrix. `blocks[i][j]`, when present, must match the
    /// declared row/column partition; absent blocks are zero.
    pub fn from_blocks(
        row_sizes: &[usize],
        col_sizes: &[usize],
        blocks: &[(usize, usize, &Matrix<R>)],
    ) -> Self {
        let rows = row_sizes.iter().sum();
        let cols = col_sizes.iter().sum();
        let row_off: Vec<usize> = row_sizes
            .iter()
            .scan(0, |acc, &s| {
                let o = *acc;
                *acc += s;
                Some(o)
            })
            .collect();
        let col_off: Vec<usize> = col_sizes
            .iter()
            .scan(0, |acc, &s| {
                let o = *acc;
                *acc += s;
                Some(o)
            })
            .collect();
        let mut m = Self::zero(rows, cols);
        for &(bi, bj, blk) in blocks {
            assert_eq!(blk.rows, row_sizes[bi], "block row size mismatch");
            assert_eq!(blk.cols, col_sizes[bj], "block col size mismatch");
            for i in 0..blk.rows {
                for j in 0..blk.cols {
                    m.set(row_off[bi] + i, col_off[bj] + j, blk.at(i, j).clone());
                }
            }
        }
        m
    }

    /// Kronecker product: entry at `(i*b.rows + k, j*b.cols + l)` is
    /// `a[i,j] * b[k,l]`.
    pub fn kronecker(&self, b: &Matrix<R>) -> Self {
        Self::from_fn(self.rows * b.rows, self.cols * b.cols, |i, j| {
            let (ia, ib) = (i / b.rows, i % b.rows);
            let (ja, jb) = (j / b.cols, j % b.cols);
            self.at(ia, ja).mul(b.at(ib, jb))
        })
    }

    pub fn neg_matrix(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j).neg())
    }

    /// Flatten column by column: the vector `(col 0, col 1, ...)` as a one
    /// column matrix. This is the layout used by the totalizations.
    pub fn vectorize_columns(&self) -> Matrix<R> {
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.at(i, j).clone());
            }
        }
        Matrix::new(self.rows * self.cols, 1, data)
    }

    /// Inverse of `vectorize_columns`.
    pub fn from_column_vector(rows: usize, cols: usize, v: &Matrix<R>) -> Matrix<R> {
        assert_eq!(v.cols, 1);
        assert_eq!(v.rows, rows * cols);
        Matrix::from_fn(rows, cols, |i, j| v.at(j * rows + i, 0).clone())
    }

    // Elementary operations, used by the Smith normal form routine.

    pub(crate) fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    pub(crate) fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.rows {
            self.data.swap(k * self.cols + i, k * self.cols + j);
        }
    }

    /// row_i += c * row_j
    pub(crate) fn add_row_multiple(&mut self, i: usize, j: usize, c: &R) {
        for k in 0..self.cols {
            let v = self.at(i, k).add(&self.at(j, k).mul(c));
            self.set(i, k, v);
        }
    }

    /// col_i += c * col_j
    pub(crate) fn add_col_multiple(&mut self, i: usize, j: usize, c: &R) {
        for k in 0..self.rows {
            let v = self.at(k, i).add(&self.at(k, j).mul(c));
            self.set(k, i, v);
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, u: &R) {
        for k in 0..self.cols {
            let v = self.at(i, k).mul(u);
            self.set(i, k, v);
        }
    }

    /// Rows `(i, j)` <- `[a b; c d] * (rows i, j)`.
    pub(crate) fn left_elementary(&mut self, comps: [&R; 4], i: usize, j: usize) {
        let [a, b, c, d] = comps;
        for k in 0..self.cols {
            let x = self.at(i, k).clone();
            let y = self.at(j, k).clone();
            self.set(i, k, a.mul(&x).add(&b.mul(&y)));
            self.set(j, k, c.mul(&x).add(&d.mul(&y)));
        }
    }

    /// Cols `(i, j)` <- `(cols i, j) * [a c; b d]`.
    pub(crate) fn right_elementary(&mut self, comps: [&R; 4], i: usize, j: usize) {
        let [a, b, c, d] = comps;
        for k in 0..self.rows {
            let x = self.at(k, i).clone();
            let y = self.at(k, j).clone();
            self.set(k, i, x.mul(a).add(&y.mul(b)));
            self.set(k, j, x.mul(c).add(&y.mul(d)));
        }
    }
}

impl<R: EuclideanDomain> Mul for &Matrix<R> {
    type Output = Matrix<R>;

    fn mul(self, rhs: &Matrix<R>) -> Matrix<R> {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = R::zero();
            for k in 0..self.cols {
                let x = self.at(i, k);
                if x.is_zero() {
                    continue;
                }
                acc = acc.add(&x.mul(rhs.at(k, j)));
            }
            acc
        })
    }
}

impl<R: EuclideanDomain> Add for &Matrix<R> {
    type Output = Matrix<R>;

    fn add(self, rhs: &Matrix<R>) -> Matrix<R> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape mismatch");
        Matrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j).add(rhs.at(i, j)))
    }
}

impl<R: EuclideanDomain> Sub for &Matrix<R> {
    type Output = Matrix<R>;

    fn sub(self, rhs: &Matrix<R>) -> Matrix<R> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape mismatch");
        Matrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j).sub(rhs.at(i, j)))
    }
}

impl<R: EuclideanDomain> Neg for &Matrix<R> {
    type Output = Matrix<R>;

    fn neg(self) -> Matrix<R> {
        self.neg_matrix()
    }
}

impl<R: fmt::Display> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
