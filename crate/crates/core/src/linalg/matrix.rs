use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use super::vector::ComplexVector;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Dense complex matrix stored row-major.
///
/// Shape-only constructors (`zeros`, `from_fn`, ...) accept any shape, including
/// empty ones used for empty subspace bases. [`ComplexMatrix::new`] validates
/// user data: positive shape, matching entry count, finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidInput(format!("matrix shape {rows}x{cols} must be positive")));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries supplied for a {rows}x{cols} matrix", data.len())));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("matrix entries must be finite".into()));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from rows of complex entries.
    pub fn from_rows(rows: &[Vec<Complex<T>>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.iter().flatten().copied().collect())
    }

    /// Builds a real matrix from `f64` rows; convenient for literal tables.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Self::from_fn(r, c, |i, j| Complex::new(crate::scalar::lit(rows[i][j]), T::zero()))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Complex::one() } else { Complex::zero() })
    }

    pub fn from_diag(d: &[Complex<T>]) -> Self {
        Self::from_fn(d.len(), d.len(), |i, j| if i == j { d[i] } else { Complex::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[ComplexVector<T>]) -> Self {
        assert!(columns.iter().all(|v| v.len() == rows), "from_columns: column length mismatch");
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i])
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

    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn column(&self, j: usize) -> ComplexVector<T> {
        ComplexVector::from_fn(self.rows, |i| self[(i, j)])
    }

    pub fn columns(&self) -> Vec<ComplexVector<T>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> ComplexVector<T> {
        ComplexVector::from_fn(self.cols, |j| self[(i, j)])
    }

    pub fn set_column(&mut self, j: usize, v: &ComplexVector<T>) {
        assert_eq!(v.len(), self.rows, "set_column: length mismatch");
        for i in 0..self.rows {
            self[(i, j)] = v[i];
        }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])])
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), self.cols, |i, j| self[(idx[i], j)])
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| f(z)).collect() }
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.map(|z| z * s)
    }

    pub fn mul_vec(&self, v: &ComplexVector<T>) -> ComplexVector<T> {
        assert_eq!(self.cols, v.len(), "mul_vec: shape mismatch");
        ComplexVector::from_fn(self.rows, |i| {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            row.iter().zip(v.iter()).fold(Complex::zero(), |acc, (a, b)| acc + a * b)
        })
    }

    /// Fallible product for callers handling user-supplied shapes.
    pub fn try_matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!("cannot multiply {}x{} by {}x{}", self.rows, self.cols, rhs.rows, rhs.cols)));
        }
        Ok(self * rhs)
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.rows.min(self.cols)).fold(Complex::zero(), |acc, i| acc + self[(i, i)])
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    /// Induced 1-norm (maximum absolute column sum).
    pub fn norm_one(&self) -> T {
        (0..self.cols).map(|j| (0..self.rows).map(|i| self[(i, j)].norm()).sum::<T>()).fold(T::zero(), T::max)
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `tr(self^H other)`
    pub fn inner(&self, other: &Self) -> Complex<T> {
        assert_eq!(self.shape(), other.shape(), "inner: shape mismatch");
        self.data.iter().zip(&other.data).fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * b)
    }

    /// Real Frobenius inner product `Re tr(self^H other)`.
    pub fn inner_re(&self, other: &Self) -> T {
        self.inner(other).re
    }

    /// Commutator `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Self) -> Self {
        let (p, q) = other.shape();
        Self::from_fn(self.rows * p, self.cols * q, |i, j| self[(i / p, j / q)] * other[(i % p, j % q)])
    }

    pub fn hstack(blocks: &[&Self]) -> Self {
        let rows = blocks.first().map_or(0, |b| b.rows);
        assert!(blocks.iter().all(|b| b.rows == rows), "hstack: row mismatch");
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            for i in 0..rows {
                for j in 0..b.cols {
                    out[(i, offset + j)] = b[(i, j)];
                }
            }
            offset += b.cols;
        }
        out
    }

    pub fn vstack(blocks: &[&Self]) -> Self {
        let cols = blocks.first().map_or(0, |b| b.cols);
        assert!(blocks.iter().all(|b| b.cols == cols), "vstack: column mismatch");
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            data.extend_from_slice(&b.data);
        }
        Self { rows, cols, data }
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block2(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        Self::vstack(&[&Self::hstack(&[a, b]), &Self::hstack(&[c, d])])
    }

    /// Column-major flattening `vec(self)`.
    pub fn vec_col_major(&self) -> ComplexVector<T> {
        ComplexVector::from_fn(self.rows * self.cols, |k| self[(k % self.rows, k / self.rows)])
    }

    pub fn from_vec_col_major(rows: usize, cols: usize, v: &ComplexVector<T>) -> Self {
        assert_eq!(v.len(), rows * cols, "from_vec_col_major: length mismatch");
        Self::from_fn(rows, cols, |i, j| v[i + j * rows])
    }

    /// Row-major flattening.
    pub fn flatten(&self) -> ComplexVector<T> {
        ComplexVector::from_vec_unchecked(self.data.clone())
    }

    /// Real coordinates of the row-major flattening: real parts, then imaginary parts.
    pub fn to_real_stacked(&self) -> Vec<T> {
        self.data.iter().map(|z| z.re).chain(self.data.iter().map(|z| z.im)).collect()
    }

    /// Frobenius distance to another matrix of the same shape.
    pub fn distance(&self, other: &Self) -> T {
        (self - other).frobenius_norm()
    }
}

impl<T> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn mul(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.cols, rhs.rows, "matmul: shape mismatch {:?} x {:?}", self.shape(), rhs.shape());
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let rrow = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, b) in orow.iter_mut().zip(rrow) {
                    *o = *o + a * b;
                }
            }
        }
        out
    }
}

impl<T: Real> Add for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn add(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.shape(), rhs.shape(), "add: shape mismatch");
        ComplexMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl<T: Real> Sub for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn sub(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.shape(), rhs.shape(), "sub: shape mismatch");
        ComplexMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl<T: Real> Neg for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn neg(self) -> ComplexMatrix<T> {
        self.map(|z| -z)
    }
}

impl<T: fmt::Debug> fmt::Debug for ComplexMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = &self.data[i * self.cols + j];
                write!(f, "{:>10.4?}{:+.4?}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    #[test]
    fn new_validates_shape_and_entries() {
        assert!(ComplexMatrix::<f64>::new(0, 2, vec![]).is_err());
        assert!(ComplexMatrix::new(2, 2, vec![c::<f64>(1.0, 0.0); 3]).is_err());
        assert!(ComplexMatrix::new(1, 1, vec![Complex::new(f64::INFINITY, 0.0)]).is_err());
        assert!(ComplexMatrix::new(1, 2, vec![c::<f64>(1.0, 0.0); 2]).is_ok());
    }

    #[test]
    fn product_adjoint_and_trace() {
        let a = ComplexMatrix::from_rows(&[vec![c::<f64>(1.0, 1.0), c(2.0, 0.0)], vec![c(0.0, -1.0), c(3.0, 0.5)]]).unwrap();
        let id = ComplexMatrix::identity(2);
        assert_eq!(&a * &id, a);
        assert_eq!(a.adjoint().adjoint(), a);
        assert!((a.trace() - c(4.0, 1.5)).norm() < 1e-15);
        // (AB)^H = B^H A^H
        let b = a.transpose();
        let lhs = (&a * &b).adjoint();
        let rhs = &b.adjoint() * &a.adjoint();
        assert!(lhs.distance(&rhs) < 1e-14);
    }

    #[test]
    fn vec_col_major_roundtrip_and_kron_identity() {
        let a = ComplexMatrix::<f64>::from_fn(2, 3, |i, j| c((i * 3 + j) as f64, i as f64));
        let v = a.vec_col_major();
        assert_eq!(v[1], a[(1, 0)]);
        assert_eq!(ComplexMatrix::from_vec_col_major(2, 3, &v), a);
        // vec(A X B) = (B^T kron A) vec(X)
        let x = ComplexMatrix::<f64>::from_fn(3, 3, |i, j| c(i as f64 - j as f64, 1.0));
        let b = ComplexMatrix::<f64>::from_fn(3, 2, |i, j| c(1.0, (i + j) as f64));
        let lhs = (&(&a * &x) * &b).vec_col_major();
        let rhs = b.transpose().kron(&a).mul_vec(&x.vec_col_major());
        assert!(lhs.distance(&rhs) < 1e-12);
    }

    #[test]
    fn try_matmul_reports_mismatch() {
        let a = ComplexMatrix::<f64>::zeros(2, 3);
        assert!(matches!(a.try_matmul(&a), Err(Error::DimensionMismatch(_))));
    }
}
