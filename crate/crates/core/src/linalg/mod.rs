//! Dense complex linear algebra, generic over the real scalar type.

pub mod decomp;
pub mod expm;
pub mod forms;
mod json;
pub mod matrix;
pub mod random;
pub mod subspace;
pub mod vector;

pub use decomp::{condition_number, determinant, hermitian_eigen, inverse, nullspace, rank, singular_values, solve, svd, Nullspace, Svd};
pub use expm::expm;
pub use forms::{
    eval_bilinear, eval_sesquilinear, re_im_split, standard_j_matrix, structure_from_forms, structure_from_forms_with_tol,
    AntilinearStructure, BilinearForm, SesquilinearForm, StructureSign, Symmetry,
};
pub use matrix::ComplexMatrix;
pub use random::{seeded_rng, SeededRng};
pub use subspace::{
    invariance_residual, orthonormal_complement, orthonormalize, project_onto_span, projector, quaternionic_orthonormalize,
    real_orthonormalize, real_projection, real_span_basis, subspace_distance,
};
pub use vector::ComplexVector;
