//! Certification of the three constructions: isotropy and orbit dimensions,
//! Cartan compatibility, the geodesic identity, the characteristic angle
//! census and construction-specific identities, collected into reports.

pub mod checks;
pub mod construction;
pub mod reference;
pub mod report;

pub use checks::{
    angle_census, cartan_compatibility, geodesic_orbit_check, isotropy_algebra, isotropy_distance, isotropy_membership_test,
    orbit_dimension, AngleCensus, IsotropyAlgebra, OrbitDimension,
};
pub use construction::{Ambient, BasePoint, Construction, ConstructionId, Expected, Perturbation, PerturbationKind};
pub use report::{run_all, run_many, Bound, CertificationReport, CertifyConfig, CheckRecord, Tolerances};
