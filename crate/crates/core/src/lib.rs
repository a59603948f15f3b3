//! Numerical constructions of the three "skew" totally geodesic submanifolds of
//! the rank-2 symmetric spaces: a 2-sphere in the complex quadric `Q^3`, a
//! `CP^2` in the complex 2-Grassmannian `G_2(C^6)` and an `HP^2` in the
//! quaternionic 2-Grassmannian `G_2(H^7)`, together with certification of their
//! structure (isotropy, Cartan compatibility, tangent spaces, characteristic
//! angle `arctan(1/2)`, representation branching).
//!
//! The linear algebra core is generic over the real scalar type (see
//! [`Real`]); the aliases below fix it to `f64`, which is what the
//! certification layer uses.

pub mod certify;
pub mod error;
pub mod exterior;
pub mod lie;
pub mod linalg;
pub mod scalar;
pub mod spaces;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Complex64 = num_complex::Complex<f64>;
pub type CMatrix = linalg::ComplexMatrix<f64>;
pub type CVector = linalg::ComplexVector<f64>;
pub type Hermitian = linalg::SesquilinearForm<f64>;
pub type Bilinear = linalg::BilinearForm<f64>;
pub type Antilinear = linalg::AntilinearStructure<f64>;
pub type Rep = lie::Representation<f64>;
pub type Group = lie::MatrixLieGroup<f64>;
pub type Trivector = exterior::Trivector<f64>;
