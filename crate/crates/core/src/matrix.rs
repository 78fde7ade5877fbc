//! Dense matrices over `F_p` and over `f64`: rank, determinants and numerical kernels.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;
use core::ops::{Add, Div, Mul, Neg, Sub};

use crate::field::Fp;
use crate::{Error, Result};

/// Entry type of a [`Matrix`].
pub trait Scalar:
    Copy
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
}

impl Scalar for Fp {
    fn zero() -> Self {
        Fp::ZERO
    }
    fn one() -> Self {
        Fp::ONE
    }
    fn from_i64(v: i64) -> Self {
        Fp::from_i64(v)
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from equally long rows. `cols` is needed for the zero-row case.
    pub fn from_rows(cols: usize, rows: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            m.row_mut(r).copy_from_slice(row);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [T] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| f(x)).collect() }
    }

    /// The submatrix on the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m[(i, j)] = self[(r, c)];
            }
        }
        m
    }

    pub fn without_row(&self, r: usize) -> Self {
        let rows: Vec<usize> = (0..self.rows).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        self.select(&rows, &cols)
    }

    /// Appends a row.
    pub fn push_row(&mut self, row: &[T]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).fold(T::zero(), |acc, (&a, &b)| acc + a * b))
            .collect()
    }
}

impl<T> core::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> core::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix<Fp> {
    /// Exact rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            let Some(p) = (rank..m.rows).find(|&r| !m[(r, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, rank);
            let inv = m[(rank, c)].inverse().expect("nonzero pivot");
            for r in rank + 1..m.rows {
                let f = m[(r, c)] * inv;
                if f.is_zero() {
                    continue;
                }
                for k in c..m.cols {
                    let v = m[(rank, k)];
                    m[(r, k)] -= f * v;
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    pub fn determinant(&self) -> Fp {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Fp::ONE;
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[(r, c)].is_zero()) else {
                return Fp::ZERO;
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)];
            det *= pivot;
            let inv = pivot.inverse().expect("nonzero pivot");
            for r in c + 1..n {
                let f = m[(r, c)] * inv;
                if f.is_zero() {
                    continue;
                }
                for k in c..n {
                    let v = m[(c, k)];
                    m[(r, k)] -= f * v;
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for k in 0..self.cols {
                self.data.swap(a * self.cols + k, b * self.cols + k);
            }
        }
    }
}

/// Rank and orthonormal kernel basis of a real matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Kernel {
    pub rank: usize,
    /// Orthonormal vectors spanning the numerical null space.
    pub basis: Vec<Vec<f64>>,
    /// Absolute values of the pivots of the triangular factor, in elimination order.
    pub pivots: Vec<f64>,
}

impl Kernel {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn norm(v: &[f64]) -> f64 {
    libm::sqrt(v.iter().map(|x| x * x).sum())
}

impl Matrix<f64> {
    /// Numerical rank and kernel by Householder QR with column pivoting of the
    /// transpose. Elimination stops at the first pivot whose norm is at most
    /// `tolerance` times the first (largest) pivot; the trailing columns of
    /// the orthogonal factor span the kernel.
    pub fn kernel(&self, tolerance: f64) -> Result<Kernel> {
        if !(tolerance > 0.0) {
            return Err(Error::domain("kernel tolerance must be positive"));
        }
        let n = self.cols; // length of each column of the transpose
        let mut cols: Vec<Vec<f64>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let steps = n.min(cols.len());
        let mut reflectors: Vec<Vec<f64>> = Vec::new();
        let mut pivots = Vec::new();
        let mut first = 0.0;
        for k in 0..steps {
            let (best, best_norm) = (k..cols.len())
                .map(|j| (j, norm(&cols[j][k..])))
                .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if k == 0 {
                first = best_norm;
            }
            if best_norm == 0.0 || best_norm <= tolerance * first {
                break;
            }
            cols.swap(k, best);
            let x = &cols[k][k..];
            let alpha = if x[0] >= 0.0 { -best_norm } else { best_norm };
            let mut v = vec![0.0; n];
            v[k..].copy_from_slice(x);
            v[k] -= alpha;
            let vn = norm(&v[k..]);
            for x in &mut v[k..] {
                *x /= vn;
            }
            for col in cols.iter_mut().skip(k) {
                let dot: f64 = v[k..].iter().zip(&col[k..]).map(|(a, b)| a * b).sum();
                for (c, a) in col[k..].iter_mut().zip(&v[k..]) {
                    *c -= 2.0 * dot * a;
                }
            }
            pivots.push(best_norm);
            reflectors.push(v);
        }
        let rank = reflectors.len();
        let basis = (rank..n)
            .map(|j| {
                let mut y = vec![0.0; n];
                y[j] = 1.0;
                for v in reflectors.iter().rev() {
                    let dot: f64 = v.iter().zip(&y).map(|(a, b)| a * b).sum();
                    for (c, a) in y.iter_mut().zip(v) {
                        *c -= 2.0 * dot * a;
                    }
                }
                y
            })
            .collect();
        Ok(Kernel { rank, basis, pivots })
    }

    pub fn rank(&self, tolerance: f64) -> Result<usize> {
        self.kernel(tolerance).map(|k| k.rank)
    }

    /// Determinant by LU with partial pivoting.
    pub fn determinant(&self) -> f64 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1.0;
        for c in 0..n {
            let p = (c..n)
                .max_by(|&a, &b| m[(a, c)].abs().total_cmp(&m[(b, c)].abs()))
                .expect("non-empty range");
            if m[(p, c)] == 0.0 {
                return 0.0;
            }
            if p != c {
                for k in 0..n {
                    m.data.swap(p * n + k, c * n + k);
                }
                det = -det;
            }
            let pivot = m[(c, c)];
            det *= pivot;
            for r in c + 1..n {
                let f = m[(r, c)] / pivot;
                for k in c..n {
                    let v = m[(c, k)];
                    m[(r, k)] -= f * v;
                }
            }
        }
        det
    }

    /// Product of the Euclidean norms of the rows; bounds `|det|`.
    pub fn hadamard_bound(&self) -> f64 {
        (0..self.rows).map(|r| norm(self.row(r))).product()
    }
}
