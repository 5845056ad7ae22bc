//! Smith normal form and the exact linear algebra built on it.
//!
//! `snf` computes `U * A * V = D` with `U`, `V` invertible over the ring and
//! `D` diagonal with a divisibility chain `d1 | d2 | ...` of unit-normalized
//! entries. Inverses of the transforms are tracked alongside, so kernels,
//! images, and exact solving all come out of one routine.
//!
//! Pivot selection: the nonzero entry of minimal Euclidean norm in the
//! remaining submatrix, ties broken by lowest `(row, col)`. The output is a
//! pure function of the input.

use alloc::vec::Vec;

use crate::limits::check_entry;
use crate::matrix::Matrix;
use crate::ring::EuclideanDomain;

#[derive(Debug, Clone)]
pub struct SmithDecomposition<R: EuclideanDomain> {
    pub d: Matrix<R>,
    pub u: Matrix<R>,
    pub u_inv: Matrix<R>,
    pub v: Matrix<R>,
    pub v_inv: Matrix<R>,
    pub rank: usize,
}

impl<R: EuclideanDomain> SmithDecomposition<R> {
    /// The nonzero diagonal entries.
    pub fn factors(&self) -> Vec<R> {
        (0..self.rank).map(|i| self.d.at(i, i).clone()).collect()
    }
}

struct Calc<R> {
    d: Matrix<R>,
    u: Matrix<R>,
    u_inv: Matrix<R>,
    v: Matrix<R>,
    v_inv: Matrix<R>,
}

impl<R: EuclideanDomain> Calc<R> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.d.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.d.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row_i += c * row_j
    fn add_row(&mut self, i: usize, j: usize, c: &R) {
        self.d.add_row_multiple(i, j, c);
        self.u.add_row_multiple(i, j, c);
        self.u_inv.add_col_multiple(j, i, &c.neg());
        for k in 0..self.d.cols() {
            check_entry(self.d.at(i, k));
        }
    }

    /// col_i += c * col_j
    fn add_col(&mut self, i: usize, j: usize, c: &R) {
        self.d.add_col_multiple(i, j, c);
        self.v.add_col_multiple(i, j, c);
        self.v_inv.add_row_multiple(j, i, &c.neg());
        for k in 0..self.d.rows() {
            check_entry(self.d.at(k, i));
        }
    }

    /// rows (i, j) <- [a b; c d] * rows (i, j), with unit determinant.
    fn left_elementary(&mut self, comps: [&R; 4], i: usize, j: usize) {
        let [a, b, c, d] = comps;
        let det = a.mul(d).sub(&b.mul(c));
        let det_inv = det.unit_inv().expect("elementary block must be unimodular");
        self.d.left_elementary(comps, i, j);
        self.u.left_elementary(comps, i, j);
        // inverse block, times 1/det
        let inv = [
            d.mul(&det_inv),
            b.neg().mul(&det_inv),
            c.neg().mul(&det_inv),
            a.mul(&det_inv),
        ];
        self.u_inv
            .right_elementary([&inv[0], &inv[2], &inv[1], &inv[3]], i, j);
        for k in 0..self.d.cols() {
            check_entry(self.d.at(i, k));
            check_entry(self.d.at(j, k));
        }
    }

    /// cols (i, j) <- cols (i, j) * [a c; b d], with unit determinant.
    fn right_elementary(&mut self, comps: [&R; 4], i: usize, j: usize) {
        let [a, b, c, d] = comps;
        let det = a.mul(d).sub(&b.mul(c));
        let det_inv = det.unit_inv().expect("elementary block must be unimodular");
        self.d.right_elementary(comps, i, j);
        self.v.right_elementary(comps, i, j);
        let inv = [
            d.mul(&det_inv),
            b.neg().mul(&det_inv),
            c.neg().mul(&det_inv),
            a.mul(&det_inv),
        ];
        self.v_inv
            .left_elementary([&inv[0], &inv[2], &inv[1], &inv[3]], i, j);
        for k in 0..self.d.rows() {
            check_entry(self.d.at(k, i));
            check_entry(self.d.at(k, j));
        }
    }

    fn scale_row_by_unit(&mut self, i: usize, unit: &R) {
        let inv = unit.unit_inv().expect("row scale must be by a unit");
        self.d.scale_row(i, unit);
        self.u.scale_row(i, unit);
        // u_inv gets its column i scaled by the inverse
        for k in 0..self.u_inv.rows() {
            let v = self.u_inv.at(k, i).mul(&inv);
            self.u_inv.set(k, i, v);
        }
    }

    /// Minimal-norm nonzero entry in the submatrix at `(k.., k..)`.
    fn select_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in k..self.d.rows() {
            for j in k..self.d.cols() {
                let x = self.d.at(i, j);
                check_entry(x);
                if x.is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if x.norm_cmp(self.d.at(bi, bj)) == core::cmp::Ordering::Less {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        best
    }

    /// Clear row k and column k outside the pivot at (k, k).
    fn eliminate_at(&mut self, k: usize) {
        loop {
            let mut touched = false;
            for i in (k + 1)..self.d.rows() {
                if self.d.at(i, k).is_zero() {
                    continue;
                }
                touched = true;
                let x = self.d.at(k, k).clone();
                let y = self.d.at(i, k).clone();
                if let Some(q) = y.exact_div(&x) {
                    self.add_row(i, k, &q.neg());
                } else {
                    let (g, s, t) = x.gcd_ext(&y);
                    let a = x.exact_div(&g).expect("gcd divides");
                    let b = y.exact_div(&g).expect("gcd divides");
                    self.left_elementary([&s, &t, &b.neg(), &a], k, i);
                }
            }
            for j in (k + 1)..self.d.cols() {
                if self.d.at(k, j).is_zero() {
                    continue;
                }
                touched = true;
                let x = self.d.at(k, k).clone();
                let y = self.d.at(k, j).clone();
                if let Some(q) = y.exact_div(&x) {
                    self.add_col(j, k, &q.neg());
                } else {
                    let (g, s, t) = x.gcd_ext(&y);
                    let a = x.exact_div(&g).expect("gcd divides");
                    let b = y.exact_div(&g).expect("gcd divides");
                    self.right_elementary([&s, &t, &b.neg(), &a], k, j);
                }
            }
            if !touched {
                return;
            }
        }
    }

    /// First entry of the submatrix at `(k+1.., k+1..)` not divisible by the
    /// pivot.
    fn find_nondivisible(&self, k: usize) -> Option<usize> {
        let p = self.d.at(k, k);
        for i in (k + 1)..self.d.rows() {
            for j in (k + 1)..self.d.cols() {
                if !p.divides(self.d.at(i, j)) {
                    return Some(i);
                }
            }
        }
        None
    }
}

pub fn snf<R: EuclideanDomain>(a: &Matrix<R>) -> SmithDecomposition<R> {
    let (m, n) = (a.rows(), a.cols());
    let mut calc = Calc {
        d: a.clone(),
        u: Matrix::identity(m),
        u_inv: Matrix::identity(m),
        v: Matrix::identity(n),
        v_inv: Matrix::identity(n),
    };

    let mut rank = 0;
    for k in 0..m.min(n) {
        while let Some((pi, pj)) = calc.select_pivot(k) {
            calc.swap_rows(k, pi);
            calc.swap_cols(k, pj);
            calc.eliminate_at(k);
            match calc.find_nondivisible(k) {
                // pull the offending row up next to the pivot and retry
                Some(i) => calc.add_row(k, i, &R::one()),
                None => break,
            }
        }
        if calc.d.at(k, k).is_zero() {
            break;
        }
        rank = k + 1;
    }

    for k in 0..rank {
        let (unit, _) = calc.d.at(k, k).unit_normal();
        if !unit.is_one() {
            let unit_inv = unit.unit_inv().expect("unit part is invertible");
            calc.scale_row_by_unit(k, &unit_inv);
        }
    }

    SmithDecomposition {
        d: calc.d,
        u: calc.u,
        u_inv: calc.u_inv,
        v: calc.v,
        v_inv: calc.v_inv,
        rank,
    }
}

/// Solve `A * X = B` exactly over the ring; `None` when no solution exists.
pub fn solve<R: EuclideanDomain>(a: &Matrix<R>, b: &Matrix<R>) -> Option<Matrix<R>> {
    assert_eq!(a.rows(), b.rows(), "solve: row count mismatch");
    let dec = snf(a);
    let c = &dec.u * b;
    let mut y = Matrix::zero(a.cols(), b.cols());
    for j in 0..b.cols() {
        for i in 0..a.rows() {
            let ci = c.at(i, j);
            if i < dec.rank {
                let q = ci.exact_div(dec.d.at(i, i))?;
                y.set(i, j, q);
            } else if !ci.is_zero() {
                return None;
            }
        }
    }
    Some(&dec.v * &y)
}

/// Solve `A * X = B` modulo the column span of `rels`.
pub fn solve_mod<R: EuclideanDomain>(
    a: &Matrix<R>,
    rels: &Matrix<R>,
    b: &Matrix<R>,
) -> Option<Matrix<R>> {
    if rels.cols() == 0 {
        return solve(a, b);
    }
    let combined = Matrix::hconcat(&[a, rels]);
    let x = solve(&combined, b)?;
    Some(x.row_slice(0, a.cols()))
}

/// Basis of `ker(A)` as the columns of the returned matrix. Over a Euclidean
/// domain the kernel of a map of free modules is free, and the basis is the
/// trailing columns of the Smith `V` transform.
pub fn kernel_basis<R: EuclideanDomain>(a: &Matrix<R>) -> Matrix<R> {
    let dec = snf(a);
    let indices: Vec<usize> = (dec.rank..a.cols()).collect();
    dec.v.select_columns(&indices)
}

/// Basis of the column span of `A`: the first `rank` columns of `U^{-1} * D`.
pub fn image_basis<R: EuclideanDomain>(a: &Matrix<R>) -> Matrix<R> {
    let dec = snf(a);
    Matrix::from_fn(a.rows(), dec.rank, |i, j| {
        dec.u_inv.at(i, j).mul(dec.d.at(j, j))
    })
}

/// Basis of the submodule `{x : A x ∈ im(rels)}` of the source of `A`.
pub fn preimage_kernel_basis<R: EuclideanDomain>(a: &Matrix<R>, rels: &Matrix<R>) -> Matrix<R> {
    assert_eq!(a.rows(), rels.rows(), "preimage: ambient rank mismatch");
    if rels.cols() == 0 {
        return kernel_basis(a);
    }
    let combined = Matrix::hconcat(&[a, rels]);
    let big_kernel = kernel_basis(&combined);
    let projected = big_kernel.row_slice(0, a.cols());
    image_basis(&projected)
}

/// Square and invertible over the ring.
pub fn is_unimodular<R: EuclideanDomain>(a: &Matrix<R>) -> bool {
    if !a.is_square() {
        return false;
    }
    let dec = snf(a);
    dec.rank == a.rows() && (0..dec.rank).all(|i| dec.d.at(i, i).is_unit())
}
