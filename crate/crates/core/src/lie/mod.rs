//! Matrix Lie groups, their representations and branching computations.

pub mod branching;
pub mod cartan;
pub mod decompose;
pub mod group;
pub mod rep;

pub use branching::{branching_chain, BranchingReport, BranchingSummary};
pub use cartan::{cartan_so3, cartan_su3, sp3_fundamental_v1, sp3_on_cube, SymmetricMatrixSpace};
pub use decompose::{
    commutant, find_intertwiner, intertwiner_space, invariant_subspaces, irreducibility, joint_invariant_subspaces, Intertwiner,
    Irreducibility, SolutionSpace,
};
pub use group::{GroupKind, MatrixLieGroup};
pub use rep::{restrict, so3_in_su3, su3_in_sp3, subrepresentation, AlgebraEmbedding, MatrixMap, Representation, RepresentationChecks};
