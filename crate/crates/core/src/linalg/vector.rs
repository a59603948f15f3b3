use std::ops::{Add, Index, IndexMut, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Dense complex column vector.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexVector<T> {
    data: Vec<Complex<T>>,
}

impl<T: Real> ComplexVector<T> {
    /// Validating constructor: the vector must be non-empty with finite entries.
    pub fn new(data: Vec<Complex<T>>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::InvalidInput("vector must have positive dimension".into()));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("vector entries must be finite".into()));
        }
        Ok(Self { data })
    }

    pub(crate) fn from_vec_unchecked(data: Vec<Complex<T>>) -> Self {
        Self { data }
    }

    pub fn zeros(n: usize) -> Self {
        Self { data: vec![Complex::zero(); n] }
    }

    /// The `i`-th standard basis vector of dimension `n`.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.data[i] = Complex::one();
        v
    }

    pub fn from_real(values: &[T]) -> Self {
        Self { data: values.iter().map(|&x| Complex::new(x, T::zero())).collect() }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize) -> Complex<T>) -> Self {
        Self { data: (0..n).map(&mut f).collect() }
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<Complex<T>> {
        self.data
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Complex<T>> {
        self.data.iter()
    }

    /// Standard Hermitian product `sum x_i conj(y_i)`, linear in `self`.
    pub fn dot(&self, other: &Self) -> Complex<T> {
        assert_eq!(self.len(), other.len(), "dot: dimension mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| a * b.conj()).fold(Complex::zero(), |acc, x| acc + x)
    }

    /// Bilinear pairing `sum x_i y_i`.
    pub fn dot_bilinear(&self, other: &Self) -> Complex<T> {
        assert_eq!(self.len(), other.len(), "dot_bilinear: dimension mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).fold(Complex::zero(), |acc, x| acc + x)
    }

    pub fn norm_sqr(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    pub fn conj(&self) -> Self {
        Self { data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self { data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn scale_real(&self, s: T) -> Self {
        Self { data: self.data.iter().map(|z| z * s).collect() }
    }

    /// `self + s * other`
    pub fn axpy(&self, s: Complex<T>, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "axpy: dimension mismatch");
        Self { data: self.data.iter().zip(&other.data).map(|(a, b)| a + b * s).collect() }
    }

    pub fn real_part(&self) -> Self {
        Self { data: self.data.iter().map(|z| Complex::new(z.re, T::zero())).collect() }
    }

    pub fn imag_part(&self) -> Self {
        Self { data: self.data.iter().map(|z| Complex::new(z.im, T::zero())).collect() }
    }

    /// Returns the normalized vector, or `None` when the norm is not positive.
    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        if n > T::zero() && n.is_finite() {
            Some(self.scale_real(n.recip()))
        } else {
            None
        }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Real coordinates `(re_0, .., re_{n-1}, im_0, .., im_{n-1})`.
    pub fn to_real_stacked(&self) -> Vec<T> {
        self.data.iter().map(|z| z.re).chain(self.data.iter().map(|z| z.im)).collect()
    }

    pub fn distance(&self, other: &Self) -> T {
        (self - other).norm()
    }
}

impl<T> Index<usize> for ComplexVector<T> {
    type Output = Complex<T>;
    fn index(&self, i: usize) -> &Complex<T> {
        &self.data[i]
    }
}

impl<T> IndexMut<usize> for ComplexVector<T> {
    fn index_mut(&mut self, i: usize) -> &mut Complex<T> {
        &mut self.data[i]
    }
}

impl<T: Real> Add for &ComplexVector<T> {
    type Output = ComplexVector<T>;
    fn add(self, rhs: Self) -> ComplexVector<T> {
        assert_eq!(self.len(), rhs.len(), "add: dimension mismatch");
        ComplexVector { data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl<T: Real> Sub for &ComplexVector<T> {
    type Output = ComplexVector<T>;
    fn sub(self, rhs: Self) -> ComplexVector<T> {
        assert_eq!(self.len(), rhs.len(), "sub: dimension mismatch");
        ComplexVector { data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl<T: Real> Neg for &ComplexVector<T> {
    type Output = ComplexVector<T>;
    fn neg(self) -> ComplexVector<T> {
        ComplexVector { data: self.data.iter().map(|z| -z).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    #[test]
    fn new_rejects_empty_and_non_finite() {
        assert!(ComplexVector::<f64>::new(vec![]).is_err());
        assert!(ComplexVector::new(vec![Complex::new(f64::NAN, 0.0)]).is_err());
        assert!(ComplexVector::new(vec![c::<f64>(1.0, 2.0)]).is_ok());
    }

    #[test]
    fn dot_is_linear_in_first_slot() {
        let x = ComplexVector::new(vec![c::<f64>(1.0, 1.0), c(0.0, 2.0)]).unwrap();
        let y = ComplexVector::new(vec![c::<f64>(2.0, -1.0), c(1.0, 0.0)]).unwrap();
        let i = c::<f64>(0.0, 1.0);
        let lhs = x.scale(i).dot(&y);
        assert!((lhs - i * x.dot(&y)).norm() < 1e-15);
        let rhs = x.dot(&y.scale(i));
        assert!((rhs + i * x.dot(&y)).norm() < 1e-15);
    }
}
