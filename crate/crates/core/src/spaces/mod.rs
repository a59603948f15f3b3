//! Points, tangent vectors, Cartan splittings, geodesics and characteristic
//! angles for the complex quadric and the complex and quaternionic
//! 2-Grassmannians.

pub mod grassmann;
pub mod quadric;
pub mod splitting;

pub use grassmann::{characteristic_angle_grassmann, grassmann_splitting, Grassmannian, PlanePoint, TangentAtPlane};
pub use quadric::{characteristic_angle_quadric, quadric_splitting, ComplexQuadric, QuadricPoint};
pub use splitting::{CartanSplitting, SplittingResiduals};
