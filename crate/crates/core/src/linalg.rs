//! Dense exact matrices over a [`Field`], sized for desk-scale diagrams.
//!
//! Everything reduces to Gauss-Jordan elimination: rank, kernel and left-kernel
//! bases, linear solves on either side, and inverses. Zero-width and
//! zero-height matrices are first-class citizens; diagrams routinely contain
//! zero objects.

use std::fmt;

use num_traits::Zero;

use crate::field::Field;

/// Row-major `rows x cols` matrix. A map is stored as `target_dim x source_dim`.
#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count mismatch");
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut F {
        &mut self.data[r * self.cols + c]
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix<F>) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            for c in 0..block.cols {
                *self.at_mut(r0 + r, c0 + c) = block.at(r, c).clone();
            }
        }
    }

    /// Column slice `[c0, c0 + width)`.
    pub fn columns(&self, c0: usize, width: usize) -> Matrix<F> {
        assert!(c0 + width <= self.cols);
        let mut out = Matrix::zeros(self.rows, width);
        for r in 0..self.rows {
            for c in 0..width {
                *out.at_mut(r, c) = self.at(r, c0 + c).clone();
            }
        }
        out
    }

    /// Row slice `[r0, r0 + height)`.
    pub fn rows_slice(&self, r0: usize, height: usize) -> Matrix<F> {
        assert!(r0 + height <= self.rows);
        let mut out = Matrix::zeros(height, self.cols);
        for r in 0..height {
            for c in 0..self.cols {
                *out.at_mut(r, c) = self.at(r0 + r, c).clone();
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix<F> {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        out
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, rhs.rows, "composition shape mismatch");
        let mut out: Matrix<F> = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let t = out.at(r, c).clone() + a.clone() * rhs.at(k, c).clone();
                    *out.at_mut(r, c) = t;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                v.iter().enumerate().fold(F::zero(), |acc, (c, x)| {
                    acc + self.at(r, c).clone() * x.clone()
                })
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    /// Reduced row echelon form together with the pivot column indices.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = F::one() / m.at(r, c).clone();
            for j in c..m.cols {
                let t = m.at(r, j).clone() * inv.clone();
                *m.at_mut(r, j) = t;
            }
            for i in 0..m.rows {
                if i == r || m.at(i, c).is_zero() {
                    continue;
                }
                let f = m.at(i, c).clone();
                for j in c..m.cols {
                    let t = m.at(i, j).clone() - f.clone() * m.at(r, j).clone();
                    *m.at_mut(i, j) = t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, one basis vector per column.
    pub fn kernel_basis(&self) -> Matrix<F> {
        let (rref, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            *out.at_mut(fc, k) = F::one();
            for (pr, &pc) in pivots.iter().enumerate() {
                *out.at_mut(pc, k) = -rref.at(pr, fc).clone();
            }
        }
        out
    }

    /// Basis of the left null space, one basis vector per row. The rows give a
    /// presentation of the cokernel: `left_kernel(M) * M = 0` and the rows are
    /// independent, so `v -> left_kernel(M) v` is the quotient by `im M`.
    pub fn left_kernel_basis(&self) -> Matrix<F> {
        self.transpose().kernel_basis().transpose()
    }

    /// Solves `self * X = rhs`; `None` when inconsistent.
    pub fn solve(&self, rhs: &Matrix<F>) -> Option<Matrix<F>> {
        assert_eq!(self.rows, rhs.rows, "solve shape mismatch");
        let mut aug = Matrix::zeros(self.rows, self.cols + rhs.cols);
        aug.paste(0, 0, self);
        aug.paste(0, self.cols, rhs);
        let (red, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (pr, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                *x.at_mut(pc, j) = red.at(pr, self.cols + j).clone();
            }
        }
        Some(x)
    }

    /// Solves `X * self = lhs`; `None` when inconsistent.
    pub fn solve_left(&self, lhs: &Matrix<F>) -> Option<Matrix<F>> {
        self.transpose()
            .solve(&lhs.transpose())
            .map(|x| x.transpose())
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve(&Matrix::identity(self.rows))?;
        if self.mul(&x).is_identity() {
            Some(x)
        } else {
            None
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rat};

    fn q(n: i64) -> Rat {
        Rat::from(num::BigInt::from(n))
    }

    fn mq(rows: Vec<Vec<i64>>) -> Matrix<Rat> {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(q).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_and_kernel() {
        let m = mq(vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn left_kernel_presents_cokernel() {
        let m = mq(vec![vec![1, 0], vec![1, 0], vec![0, 0]]);
        let q = m.left_kernel_basis();
        assert_eq!(q.rows(), 2); // coker has dimension 3 - 1
        assert!(q.mul(&m).is_zero());
        assert_eq!(q.rank(), 2);
    }

    #[test]
    fn solve_both_sides() {
        let a = mq(vec![vec![2, 0], vec![0, 4]]);
        let b = mq(vec![vec![1], vec![2]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);

        let c = mq(vec![vec![3, 0]]);
        let l = a.solve_left(&c).unwrap();
        assert_eq!(l.mul(&a), c);

        let bad = mq(vec![vec![1, 1], vec![1, 1]]);
        assert!(bad.solve(&mq(vec![vec![1], vec![2]])).is_none());
    }

    #[test]
    fn inverse_round_trip() {
        let a = mq(vec![vec![1, 1], vec![0, 1]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(mq(vec![vec![1, 1], vec![1, 1]]).inverse().is_none());
    }

    #[test]
    fn zero_sized_matrices() {
        let m: Matrix<Rat> = Matrix::zeros(0, 3);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel_basis().cols(), 3);
        let n: Matrix<Rat> = Matrix::zeros(3, 0);
        assert_eq!(n.left_kernel_basis().rows(), 3);
        assert!(n.mul(&Matrix::zeros(0, 2)).is_zero());
    }

    #[test]
    fn rank_over_prime_field() {
        // Rank drops mod 2 but not over the rationals.
        let over_q = mq(vec![vec![1, 1], vec![1, -1]]);
        assert_eq!(over_q.rank(), 2);
        let f = |n: i64| Fp::new(n, 2);
        let over_f2 = Matrix::from_rows(vec![vec![f(1), f(1)], vec![f(1), f(-1)]]);
        assert_eq!(over_f2.rank(), 1);
    }
}
