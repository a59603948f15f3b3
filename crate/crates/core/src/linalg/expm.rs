//! Matrix exponential by scaling and squaring with a degree-13 Padé approximant.

use num_complex::Complex;

use super::decomp::solve;
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

// Backward-error bound for the [13/13] approximant in double precision.
const THETA13: f64 = 5.371920351148152;

pub fn expm<T: Real>(a: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!("expm needs a square matrix, got {:?}", a.shape())));
    }
    let n = a.rows();
    if !a.is_finite() {
        return Err(Error::InvalidInput("expm: non-finite entries".into()));
    }
    let norm = lit::<f64>(a.norm_one().to_f64().unwrap_or(f64::INFINITY));
    let squarings = if norm > THETA13 { (norm / THETA13).log2().ceil() as i32 } else { 0 };
    let scaled = a.scale_real(lit::<T>(2f64.powi(-squarings)));

    let id = ComplexMatrix::identity(n);
    let a2 = &scaled * &scaled;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;
    let b = |k: usize| Complex::new(lit::<T>(PADE13[k]), T::zero());
    // odd part U = A [A6 (b13 A6 + b11 A4 + b9 A2) + b7 A6 + b5 A4 + b3 A2 + b1 I]
    // even part V = A6 (b12 A6 + b10 A4 + b8 A2) + b6 A6 + b4 A4 + b2 A2 + b0 I
    let poly = |k: [usize; 7]| {
        let inner = &(&a6.scale(b(k[0])) + &a4.scale(b(k[1]))) + &a2.scale(b(k[2]));
        let low = &(&(&a6.scale(b(k[3])) + &a4.scale(b(k[4]))) + &a2.scale(b(k[5]))) + &id.scale(b(k[6]));
        &(&a6 * &inner) + &low
    };
    let u = &scaled * &poly([13, 11, 9, 7, 5, 3, 1]);
    let v = poly([12, 10, 8, 6, 4, 2, 0]);

    let mut r = solve(&(&v - &u), &(&v + &u))?;
    for _ in 0..squarings {
        r = &r * &r;
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::{gaussian_matrix, seeded_rng};
    use crate::scalar::c;

    #[test]
    fn exp_of_zero_is_identity() {
        let z = ComplexMatrix::<f64>::zeros(4, 4);
        assert_eq!(expm(&z).unwrap().distance(&ComplexMatrix::identity(4)), 0.0);
    }

    #[test]
    fn exp_of_rotation_generator() {
        let x = ComplexMatrix::<f64>::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]);
        let t = 2.5;
        let r = expm(&x.scale_real(t)).unwrap();
        let expect = ComplexMatrix::from_real_rows(&[&[t.cos(), -t.sin()], &[t.sin(), t.cos()]]);
        assert!(r.distance(&expect) < 1e-14);
    }

    #[test]
    fn exp_diagonal_and_large_norm() {
        let d = ComplexMatrix::<f64>::from_diag(&[c(0.0, 30.0), c(-2.0, 0.0), c(1.0, 1.0)]);
        let e = expm(&d).unwrap();
        assert!((e[(0, 0)] - Complex::new(0.0, 30.0f64).exp()).norm() < 1e-12);
        assert!((e[(2, 2)] - Complex::new(1.0, 1.0f64).exp()).norm() < 1e-13);
    }

    #[test]
    fn exp_x_times_exp_minus_x() {
        let mut rng = seeded_rng(2);
        for _ in 0..10 {
            let g = gaussian_matrix::<f64>(6, 6, &mut rng);
            let x = g.scale_real(g.frobenius_norm().recip());
            let p = &expm(&x).unwrap() * &expm(&x.scale_real(-1.0)).unwrap();
            assert!(p.distance(&ComplexMatrix::identity(6)) < 1e-12);
        }
    }
}
