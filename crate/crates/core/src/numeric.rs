//! Small dense real and complex matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;
use core::ops::{Add, Div, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{Float, ToPrimitive};

use crate::zlinalg::IntMatrix;

pub type C64 = Complex64;

pub const TWO_PI_I: C64 = C64 { re: 0.0, im: 2.0 * core::f64::consts::PI };

pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn modulus(self) -> f64;
    fn conjugate(self) -> Self;
    fn from_real(x: f64) -> Self;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn modulus(self) -> f64 {
        Float::abs(self)
    }
    fn conjugate(self) -> Self {
        self
    }
    fn from_real(x: f64) -> Self {
        x
    }
}

impl Scalar for C64 {
    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn one() -> Self {
        C64::new(1.0, 0.0)
    }
    fn modulus(self) -> f64 {
        self.norm()
    }
    fn conjugate(self) -> Self {
        self.conj()
    }
    fn from_real(x: f64) -> Self {
        C64::new(x, 0.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type CMat = Mat<C64>;
pub type RMat = Mat<f64>;

impl<T: Scalar> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T: Scalar> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        Mat { rows, cols, data }
    }

    pub fn from_int(a: &IntMatrix) -> Self {
        let data = a.entries().iter().map(|x| T::from_real(x.to_f64().unwrap_or(f64::NAN))).collect();
        Mat { rows: a.rows(), cols: a.cols(), data }
    }

    pub fn column(v: &[T]) -> Self {
        Mat { rows: v.len(), cols: 1, data: v.to_vec() }
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

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| f(x)).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn conj(&self) -> Self {
        self.map(T::conjugate)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == T::zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out[(i, j)] + a * rhs[(k, j)];
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).fold(T::zero(), |acc, j| acc + self[(i, j)] * v[j]))
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.shape(), rhs.shape());
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.shape(), rhs.shape());
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a - b).collect() }
    }

    pub fn scale(&self, k: T) -> Self {
        self.map(|x| x * k)
    }

    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows, "hstack needs equal row counts");
        let mut m = Self::zeros(self.rows, self.cols + rhs.cols);
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, rhs);
        m
    }

    pub fn vstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.cols, "vstack needs equal column counts");
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Mat { rows: self.rows + rhs.rows, cols: self.cols, data }
    }

    pub fn block_diag(&self, rhs: &Self) -> Self {
        let mut m = Self::zeros(self.rows + rhs.rows, self.cols + rhs.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, rhs);
        m
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "block out of range");
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = self[(r0 + i, c0 + j)];
            }
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "block out of range");
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)];
            }
        }
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                m[(i, k)] = self[(i, j)];
            }
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.modulus()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.modulus().is_finite())
    }

    /// Largest entrywise distance.
    pub fn dist(&self, rhs: &Self) -> f64 {
        assert_eq!(self.shape(), rhs.shape());
        self.data.iter().zip(&rhs.data).map(|(&a, &b)| (a - b).modulus()).fold(0.0, f64::max)
    }

    /// Reduced row echelon form with partial pivoting. Entries below
    /// `tol * max_abs` count as zero.
    pub fn rref(&self, tol: f64) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let thresh = tol * self.max_abs().max(f64::MIN_POSITIVE);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let (p, best) = (r..a.rows)
                .map(|i| (i, a[(i, c)].modulus()))
                .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if best <= thresh {
                for i in r..a.rows {
                    a[(i, c)] = T::zero();
                }
                continue;
            }
            a.swap_rows(r, p);
            let inv = T::one() / a[(r, c)];
            for j in 0..a.cols {
                a[(r, j)] = a[(r, j)] * inv;
            }
            for i in 0..a.rows {
                if i == r {
                    continue;
                }
                let f = a[(i, c)];
                if f == T::zero() {
                    continue;
                }
                for j in 0..a.cols {
                    let v = a[(i, j)] - f * a[(r, j)];
                    a[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    /// Indices of a maximal set of independent columns.
    pub fn rref_cols(&self, tol: f64) -> Vec<usize> {
        self.rref(tol).1
    }

    pub fn rank(&self, tol: f64) -> usize {
        self.rref(tol).1.len()
    }

    /// Columns spanning `{x : self x = 0}`.
    pub fn nullspace(&self, tol: f64) -> Self {
        let (a, pivots) = self.rref(tol);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zeros(self.cols, free.len());
        for (idx, &f) in free.iter().enumerate() {
            k[(f, idx)] = T::one();
            for (i, &p) in pivots.iter().enumerate() {
                k[(p, idx)] = -a[(i, f)];
            }
        }
        k
    }

    /// Rows spanning `{y : y self = 0}`.
    pub fn left_nullspace(&self, tol: f64) -> Self {
        self.transpose().nullspace(tol).transpose()
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        self.solve(&Self::identity(self.rows))
    }

    /// Solves `self x = b` for square `self`.
    pub fn solve(&self, b: &Self) -> Option<Self> {
        let n = self.rows;
        if self.cols != n || b.rows != n {
            return None;
        }
        let scale = self.max_abs();
        if scale == 0.0 && n > 0 {
            return None;
        }
        let mut a = self.hstack(b);
        for c in 0..n {
            let (p, best) = (c..n)
                .map(|i| (i, a[(i, c)].modulus()))
                .fold((c, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if best <= 1e-14 * scale {
                return None;
            }
            a.swap_rows(c, p);
            let inv = T::one() / a[(c, c)];
            for j in 0..a.cols {
                a[(c, j)] = a[(c, j)] * inv;
            }
            for i in 0..n {
                if i == c {
                    continue;
                }
                let f = a[(i, c)];
                if f == T::zero() {
                    continue;
                }
                for j in 0..a.cols {
                    let v = a[(i, j)] - f * a[(c, j)];
                    a[(i, j)] = v;
                }
            }
        }
        Some(a.block(0, n, n, b.cols))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl CMat {
    pub fn re(&self) -> RMat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.re).collect() }
    }

    pub fn im(&self) -> RMat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.im).collect() }
    }

    /// Real matrix of the map `R^cols -> C^rows = R^(2 rows)`: real parts on top.
    pub fn realify(&self) -> RMat {
        self.re().vstack(&self.im())
    }

    pub fn from_real(a: &RMat) -> CMat {
        Mat { rows: a.rows, cols: a.cols, data: a.data.iter().map(|&x| C64::new(x, 0.0)).collect() }
    }

    pub fn from_parts(re: &RMat, im: &RMat) -> CMat {
        assert_eq!(re.shape(), im.shape());
        Mat {
            rows: re.rows,
            cols: re.cols,
            data: re.data.iter().zip(&im.data).map(|(&a, &b)| C64::new(a, b)).collect(),
        }
    }

    pub fn mul_real(&self, rhs: &RMat) -> CMat {
        self.mul(&CMat::from_real(rhs))
    }
}

impl RMat {
    /// Least-squares solution of `self x = b`, via the normal equations.
    pub fn lstsq(&self, b: &RMat) -> Option<RMat> {
        let at = self.transpose();
        at.mul(self).solve(&at.mul(b))
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.rows == self.cols && self.dist(&self.transpose()) <= tol * self.max_abs().max(1.0)
    }

    /// Cholesky test for a symmetric matrix.
    pub fn is_positive_definite(&self) -> bool {
        let n = self.rows;
        if n != self.cols {
            return false;
        }
        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        let mut l = RMat::zeros(n, n);
        for j in 0..n {
            let mut d = self[(j, j)];
            for k in 0..j {
                d -= l[(j, k)] * l[(j, k)];
            }
            if !(d > 1e-12 * scale) {
                return false;
            }
            let d = Float::sqrt(d);
            l[(j, j)] = d;
            for i in j + 1..n {
                let mut s = self[(i, j)];
                for k in 0..j {
                    s -= l[(i, k)] * l[(j, k)];
                }
                l[(i, j)] = s / d;
            }
        }
        true
    }

    pub fn round_to_int(&self) -> Vec<i64> {
        self.data.iter().map(|&x| Float::round(x) as i64).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let a = CMat::from_vec(2, 2, vec![C64::new(1.0, 1.0), C64::new(2.0, 0.0), C64::new(0.0, -1.0), C64::new(3.0, 0.5)]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).dist(&CMat::identity(2)) < 1e-12);
    }

    #[test]
    fn nullspace_and_rank() {
        let a = RMat::from_vec(2, 3, vec![1.0, 2.0, 3.0, 2.0, 4.0, 6.0]);
        assert_eq!(a.rank(1e-12), 1);
        let k = a.nullspace(1e-12);
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).max_abs() < 1e-12);
        let l = a.left_nullspace(1e-12);
        assert!(l.mul(&a).max_abs() < 1e-12);
    }

    #[test]
    fn least_squares_exact() {
        let a = RMat::from_vec(3, 2, vec![1.0, 0.0, 0.0, 1.0, 1.0, 1.0]);
        let b = RMat::column(&[1.0, 2.0, 3.0]);
        let x = a.lstsq(&b).unwrap();
        assert!((x[(0, 0)] - 1.0).abs() < 1e-12 && (x[(1, 0)] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn cholesky() {
        assert!(RMat::from_vec(2, 2, vec![2.0, 1.0, 1.0, 2.0]).is_positive_definite());
        assert!(!RMat::from_vec(2, 2, vec![1.0, 2.0, 2.0, 1.0]).is_positive_definite());
    }
}
