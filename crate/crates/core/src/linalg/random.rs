//! Seeded pseudo-random inputs. Every randomized routine in the crate takes an
//! explicit RNG so results are reproducible from a seed.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::matrix::ComplexMatrix;
use super::vector::ComplexVector;
use crate::scalar::{lit, Real};

pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian<T: Real>(rng: &mut (impl Rng + ?Sized)) -> T {
    lit(rng.sample::<f64, _>(StandardNormal))
}

pub fn complex_gaussian<T: Real>(rng: &mut (impl Rng + ?Sized)) -> Complex<T> {
    Complex::new(gaussian(rng), gaussian(rng))
}

/// Matrix with independent standard complex Gaussian entries.
pub fn gaussian_matrix<T: Real>(rows: usize, cols: usize, rng: &mut (impl Rng + ?Sized)) -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

pub fn gaussian_vector<T: Real>(n: usize, rng: &mut (impl Rng + ?Sized)) -> ComplexVector<T> {
    ComplexVector::from_fn(n, |_| complex_gaussian(rng))
}

pub fn gaussian_reals<T: Real>(n: usize, rng: &mut (impl Rng + ?Sized)) -> Vec<T> {
    (0..n).map(|_| gaussian(rng)).collect()
}

/// Uniform sample from `[lo, hi)`.
pub fn uniform<T: Real>(lo: f64, hi: f64, rng: &mut (impl Rng + ?Sized)) -> T {
    lit(rng.random_range(lo..hi))
}
