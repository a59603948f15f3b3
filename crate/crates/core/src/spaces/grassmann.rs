//! Complex and quaternionic 2-Grassmannians, in coordinates where `H` is the
//! standard product and (quaternionic case) `J = [[0, -I], [I, 0]]`.

use serde::{Deserialize, Serialize};

use super::quadric::check_transvection;
use super::splitting::CartanSplitting;
use crate::error::{Error, Result};
use crate::lie::MatrixLieGroup;
use crate::linalg::{
    expm, orthonormal_complement, orthonormalize, projector, quaternionic_orthonormalize, singular_values, subspace_distance,
    AntilinearStructure, ComplexMatrix, ComplexVector, SesquilinearForm,
};
use crate::scalar::{lit, to_f64, Real};

/// `G₂(C^n)`, or `G₂(H^{n/2})` realized as J-invariant complex 4-planes of `C^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Grassmannian {
    n: usize,
    quaternionic: bool,
}

impl Grassmannian {
    pub fn complex(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidInput(format!("G_2(C^{n}) needs n >= 3")));
        }
        Ok(Self { n, quaternionic: false })
    }

    /// Planes in `H^m`, acting on `C^{2m}`.
    pub fn quaternionic(m: usize) -> Result<Self> {
        if m < 3 {
            return Err(Error::InvalidInput(format!("G_2(H^{m}) needs m >= 3")));
        }
        Ok(Self { n: 2 * m, quaternionic: true })
    }

    /// Complex dimension of the ambient space.
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    /// Complex dimension of the planes (2, or 4 in the quaternionic case).
    pub fn plane_dim(&self) -> usize {
        if self.quaternionic {
            4
        } else {
            2
        }
    }

    pub fn is_quaternionic(&self) -> bool {
        self.quaternionic
    }

    /// Real dimension of the manifold.
    pub fn real_dim(&self) -> usize {
        2 * self.plane_dim() * (self.n - self.plane_dim()) / if self.quaternionic { 2 } else { 1 }
    }

    /// The transvection group: `SU(n)` or `Sp(n/2)`.
    pub fn group<T: Real>(&self) -> MatrixLieGroup<T> {
        if self.quaternionic {
            MatrixLieGroup::sp(self.n / 2)
        } else {
            MatrixLieGroup::su(self.n)
        }
    }

    fn structure<T: Real>(&self) -> Option<AntilinearStructure<T>> {
        self.quaternionic.then(|| AntilinearStructure::standard_quaternionic(self.n / 2))
    }
}

/// A point of a Grassmannian: orthonormal bases of the plane and of its
/// complement. Quaternionic planes are stored as `b₁, Jb₁, b₂, Jb₂`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanePoint<T> {
    space: Grassmannian,
    basis: ComplexMatrix<T>,
    complement: ComplexMatrix<T>,
}

impl<T: Real> PlanePoint<T> {
    /// The plane spanned by `vectors` (its J-closure in the quaternionic case).
    pub fn new(space: Grassmannian, vectors: &[ComplexVector<T>]) -> Result<Self> {
        let n = space.n;
        if vectors.iter().any(|v| v.len() != n) {
            return Err(Error::DimensionMismatch(format!("expected vectors of length {n}")));
        }
        let h = SesquilinearForm::standard(n);
        let rtol = lit::<T>(1e-8);
        let cols: Vec<ComplexVector<T>> = match space.structure() {
            Some(j) => quaternionic_orthonormalize(&h, &j, vectors, rtol)?.into_iter().flat_map(|(b, jb)| [b, jb]).collect(),
            None => orthonormalize(&h, vectors, rtol)?,
        };
        if cols.len() != space.plane_dim() {
            return Err(Error::InvalidInput(format!("vectors span a {}-dimensional space, expected {}", cols.len(), space.plane_dim())));
        }
        Self::from_orthonormal(space, ComplexMatrix::from_columns(n, &cols))
    }

    fn from_orthonormal(space: Grassmannian, basis: ComplexMatrix<T>) -> Result<Self> {
        let complement = orthonormal_complement(&basis);
        if complement.cols() + basis.cols() != space.n {
            return Err(Error::Construction("could not complete the plane basis".into()));
        }
        Ok(Self { space, basis, complement })
    }

    pub fn space(&self) -> Grassmannian {
        self.space
    }

    pub fn basis(&self) -> &ComplexMatrix<T> {
        &self.basis
    }

    pub fn complement(&self) -> &ComplexMatrix<T> {
        &self.complement
    }

    pub fn projector(&self) -> ComplexMatrix<T> {
        projector(&self.basis)
    }

    /// `(|| B^H B − I ||, || P J − J P ||)`, the second zero for complex planes.
    pub fn residuals(&self) -> (T, T) {
        let k = self.basis.cols();
        let ortho = (&self.basis.adjoint() * &self.basis).distance(&ComplexMatrix::identity(k));
        let j = match self.space.structure::<T>() {
            Some(s) => s.commutation_residual(&self.projector()),
            None => T::zero(),
        };
        (ortho, j)
    }

    /// Projector distance, independent of the chosen bases.
    pub fn distance(&self, other: &Self) -> T {
        subspace_distance(&self.basis, &other.basis)
    }

    /// `g Z₀` for `g` in the transvection group.
    pub fn transform(&self, g: &ComplexMatrix<T>) -> Result<Self> {
        if g.shape() != (self.space.n, self.space.n) {
            return Err(Error::DimensionMismatch("transformation does not act on the Grassmannian".into()));
        }
        Ok(Self { space: self.space, basis: g * &self.basis, complement: g * &self.complement })
    }

    /// The `Hom(Z₀, Z₀^⊥)` part `C^H X B` of an algebra element.
    pub fn tangent_from_algebra(&self, x: &ComplexMatrix<T>) -> Result<TangentAtPlane<T>> {
        if x.shape() != (self.space.n, self.space.n) {
            return Err(Error::DimensionMismatch("algebra element does not act on the Grassmannian".into()));
        }
        Ok(TangentAtPlane { hom: &(&self.complement.adjoint() * x) * &self.basis })
    }

    /// `exp(t D) Z₀` for `D` in `m̃`.
    pub fn geodesic(&self, splitting: &CartanSplitting<T>, direction: &ComplexMatrix<T>, t: T, tol: T) -> Result<Self> {
        check_transvection(splitting, direction, tol)?;
        self.transform(&expm(&direction.scale_real(t))?)
    }

    /// `|| L J_Z − J_⊥ conj(L) ||` with `J` expressed in the stored bases.
    pub fn j_residual(&self, tangent: &TangentAtPlane<T>) -> T {
        match self.space.structure::<T>() {
            Some(s) => {
                let jz = &self.basis.adjoint() * &s.apply_columns(&self.basis);
                let jc = &self.complement.adjoint() * &s.apply_columns(&self.complement);
                (&(&tangent.hom * &jz) - &(&jc * &tangent.hom.conj())).frobenius_norm()
            }
            None => T::zero(),
        }
    }
}

/// A tangent vector at a plane, as a matrix `L : Z₀ → Z₀^⊥` in the stored bases.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct TangentAtPlane<T> {
    pub hom: ComplexMatrix<T>,
}

impl<T: Real> TangentAtPlane<T> {
    pub fn scale(&self, c: T) -> Self {
        Self { hom: self.hom.scale_real(c) }
    }
}

/// `k̃ = s(u(Z₀) ⊕ u(Z₀^⊥))` (resp. `sp ⊕ sp`), `m̃` = block-off-diagonal part.
pub fn grassmann_splitting<T: Real>(point: &PlanePoint<T>) -> Result<CartanSplitting<T>> {
    let p = point.projector();
    let q = &ComplexMatrix::identity(p.rows()) - &p;
    let group = point.space.group::<T>();
    CartanSplitting::from_projections(group.basis(), |x| &(&(&p * x) * &p) + &(&(&q * x) * &q), |x| &(&(&p * x) * &q) + &(&(&q * x) * &p))
}

/// `arctan(σ₂ / σ₁)` from the singular values of `L`; in the quaternionic case
/// the values come in equal pairs and the two distinct ones are used.
pub fn characteristic_angle_grassmann<T: Real>(point: &PlanePoint<T>, tangent: &TangentAtPlane<T>) -> Result<T> {
    let k = point.space.plane_dim();
    if tangent.hom.shape() != (point.space.n - k, k) {
        return Err(Error::DimensionMismatch(format!("tangent must be {}x{k}", point.space.n - k)));
    }
    let s = singular_values(&tangent.hom);
    let top = s[0];
    if !(top > T::zero()) {
        return Err(Error::UndefinedAngle("zero tangent vector".into()));
    }
    let second = if point.space.quaternionic {
        let tol = lit::<T>(1e-8) * top;
        if (s[0] - s[1]).abs() > tol || (s[2] - s[3]).abs() > tol {
            return Err(Error::Structure(format!(
                "singular values {:?} are not J-paired",
                s.iter().map(|&x| to_f64(x)).collect::<Vec<_>>()
            )));
        }
        s[2]
    } else {
        s[1]
    };
    Ok((second / top).atan())
}
