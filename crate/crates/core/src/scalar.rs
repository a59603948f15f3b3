//! Real scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumCast};

/// Floating point types the linear algebra is generic over (f32 or f64).
pub trait Real: Float + FloatConst + FromPrimitive + NumCast + Debug + Display + LowerExp + Default + Sum + Send + Sync + 'static {
    /// Relative singular-value threshold below which a value counts as zero.
    fn rank_rtol() -> Self;

    /// Residual level that a clean computation of unit-scale exact identities
    /// is expected to stay under.
    fn identity_tol() -> Self;
}

impl Real for f64 {
    fn rank_rtol() -> Self {
        1e-9
    }

    fn identity_tol() -> Self {
        1e-10
    }
}

impl Real for f32 {
    fn rank_rtol() -> Self {
        1e-4
    }

    fn identity_tol() -> Self {
        1e-4
    }
}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable in scalar type")
}

/// Complex number with real and imaginary part given as `f64` literals.
#[inline]
pub fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(lit(re), lit(im))
}

#[inline]
pub(crate) fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
