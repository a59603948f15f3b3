//! The restriction chain Sp(3) ⊃ SU(3) ⊃ SO(3) on `V₁`.

use serde::Serialize;

use super::cartan::{cartan_so3, cartan_su3, sp3_fundamental_v1};
use super::decompose::{find_intertwiner, invariant_subspaces, irreducibility, total_complexity_residual, Intertwiner, Irreducibility};
use super::rep::{restrict, so3_in_su3, su3_in_sp3, subrepresentation};
use crate::error::{Error, Result};
use crate::exterior::ExteriorCube;
use crate::linalg::ComplexMatrix;
use crate::scalar::{lit, Real};

/// Outcome of the restriction chain.
#[derive(Clone, Debug)]
pub struct BranchingReport<T> {
    pub v1_dim: usize,
    pub v1_irreducibility: Irreducibility<T>,
    /// Dimensions of the SU(3)-invariant components of `V₁`.
    pub su3_components: Vec<usize>,
    /// Basis of `V_C` in coordinates of `V₁`.
    pub vc_basis: ComplexMatrix<T>,
    /// `|| P J P ||` for the projector `P` onto `V_C`: zero when `J V_C ⊥ V_C`.
    pub vc_total_complexity: T,
    pub su3_intertwiner: Intertwiner<T>,
    pub so3_components: Vec<usize>,
    pub so3_intertwiner: Intertwiner<T>,
}

/// Plain-number summary of a [`BranchingReport`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BranchingSummary {
    pub v1_dim: usize,
    pub v1_complex_commutant_dim: usize,
    pub v1_structure_commutant_dim: Option<usize>,
    pub su3_components: Vec<usize>,
    pub vc_dim: usize,
    pub vc_total_complexity: f64,
    pub su3_intertwiner_condition: f64,
    pub su3_intertwiner_residual: f64,
    pub so3_components: Vec<usize>,
    pub so3_intertwiner_condition: f64,
    pub so3_intertwiner_residual: f64,
}

impl<T: Real> BranchingReport<T> {
    pub fn summary(&self) -> BranchingSummary {
        let f = crate::scalar::to_f64::<T>;
        BranchingSummary {
            v1_dim: self.v1_dim,
            v1_complex_commutant_dim: self.v1_irreducibility.complex_commutant_dim,
            v1_structure_commutant_dim: self.v1_irreducibility.structure_commutant_dim,
            su3_components: self.su3_components.clone(),
            vc_dim: self.vc_basis.cols(),
            vc_total_complexity: f(self.vc_total_complexity),
            su3_intertwiner_condition: f(self.su3_intertwiner.condition_number),
            su3_intertwiner_residual: f(self.su3_intertwiner.residual),
            so3_components: self.so3_components.clone(),
            so3_intertwiner_condition: f(self.so3_intertwiner.condition_number),
            so3_intertwiner_residual: f(self.so3_intertwiner.residual),
        }
    }
}

/// Restricts `V₁` to SU(3), locates the 6-dimensional component equivalent to
/// the Cartan representation of SU(3), restricts that to SO(3) and matches
/// its 5-dimensional component with the Cartan representation of SO(3).
pub fn branching_chain<T: Real>(cube: &ExteriorCube<T>, seed: u64) -> Result<BranchingReport<T>> {
    let tol = lit::<T>(1e-9);
    let v1 = sp3_fundamental_v1(cube)?;
    let v1_irreducibility = irreducibility(&v1)?;
    let su3_rep = restrict(&v1, &su3_in_sp3()?)?;
    let su3_subs = invariant_subspaces(&su3_rep, seed)?;
    let su3_components: Vec<usize> = su3_subs.iter().map(|b| b.cols()).collect();
    let target_su3 = cartan_su3()?;
    let mut found = None;
    for basis in su3_subs.iter().filter(|b| b.cols() == target_su3.dim()) {
        let sub = subrepresentation(&su3_rep, basis, tol)?;
        if let Some(t) = find_intertwiner(&sub, &target_su3, seed)? {
            found = Some((basis.clone(), sub, t));
            break;
        }
    }
    let (vc_basis, vc_rep, su3_intertwiner) =
        found.ok_or_else(|| Error::Inconsistent("no SU(3)-invariant subspace equivalent to the Cartan representation".into()))?;
    let jm = v1.structure().ok_or_else(|| Error::Structure("V1 lost its quaternionic structure".into()))?.matrix().clone();
    let vc_total_complexity = total_complexity_residual(&vc_basis, &jm);

    let so3_rep = restrict(&vc_rep, &so3_in_su3()?)?;
    let so3_subs = invariant_subspaces(&so3_rep, seed)?;
    let so3_components: Vec<usize> = so3_subs.iter().map(|b| b.cols()).collect();
    let target_so3 = cartan_so3()?;
    let five = so3_subs
        .iter()
        .find(|b| b.cols() == target_so3.dim())
        .ok_or_else(|| Error::Inconsistent(format!("SO(3) components {so3_components:?} contain no 5-dimensional part")))?;
    let vr = subrepresentation(&so3_rep, five, tol)?;
    let so3_intertwiner = find_intertwiner(&vr, &target_so3, seed)?
        .ok_or_else(|| Error::Inconsistent("5-dimensional SO(3) component is not equivalent to the Cartan representation".into()))?;
    Ok(BranchingReport {
        v1_dim: v1.dim(),
        v1_irreducibility,
        su3_components,
        vc_basis,
        vc_total_complexity,
        su3_intertwiner,
        so3_components,
        so3_intertwiner,
    })
}
