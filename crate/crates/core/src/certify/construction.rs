//! The three constructions: group, representation, ambient space and base point.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use super::reference;
use crate::error::{Error, Result};
use crate::exterior::ExteriorCube;
use crate::lie::{cartan_so3, cartan_su3, sp3_fundamental_v1, Representation, SymmetricMatrixSpace};
use crate::linalg::random::gaussian_reals;
use crate::linalg::{projector, real_orthonormalize, ComplexMatrix, ComplexVector, SeededRng};
use crate::spaces::{
    characteristic_angle_grassmann, characteristic_angle_quadric, grassmann_splitting, quadric_splitting, CartanSplitting, ComplexQuadric,
    Grassmannian, PlanePoint, QuadricPoint, TangentAtPlane,
};
use crate::{CMatrix, CVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ConstructionId {
    #[serde(rename = "q3-sphere")]
    Q3Sphere,
    #[serde(rename = "g2c6-cp2")]
    G2c6Cp2,
    #[serde(rename = "g2h7-hp2")]
    G2h7Hp2,
}

impl ConstructionId {
    pub const ALL: [ConstructionId; 3] = [Self::Q3Sphere, Self::G2c6Cp2, Self::G2h7Hp2];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Q3Sphere => "q3-sphere",
            Self::G2c6Cp2 => "g2c6-cp2",
            Self::G2h7Hp2 => "g2h7-hp2",
        }
    }
}

impl fmt::Display for ConstructionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConstructionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::Usage(format!("unknown construction '{s}' (expected q3-sphere, g2c6-cp2 or g2h7-hp2)")))
    }
}

/// Values the certification compares against.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Expected {
    pub isotropy_dim: usize,
    pub orbit_dim: usize,
    pub angle: f64,
    pub isotropy_name: &'static str,
}

/// Structured defects for negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PerturbationKind {
    /// Move the base point along a random transvection of the ambient space.
    BasePoint,
    /// Add a random `m̃` component to the image of each generator.
    Embedding,
    /// Add a random `k̃` component to the image of each generator.
    IsotropyContamination,
}

impl FromStr for PerturbationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "base-point" => Ok(Self::BasePoint),
            "embedding" => Ok(Self::Embedding),
            "isotropy-contamination" => Ok(Self::IsotropyContamination),
            _ => Err(Error::Usage(format!("unknown perturbation '{s}' (expected base-point, embedding or isotropy-contamination)"))),
        }
    }
}

impl fmt::Display for PerturbationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::BasePoint => "base-point",
            Self::Embedding => "embedding",
            Self::IsotropyContamination => "isotropy-contamination",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Perturbation {
    pub kind: PerturbationKind,
    pub size: f64,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub enum Ambient {
    Quadric(ComplexQuadric<f64>),
    Grassmann(Grassmannian),
}

#[derive(Clone, Debug, PartialEq)]
pub enum BasePoint {
    Quadric(QuadricPoint<f64>),
    Plane(PlanePoint<f64>),
}

/// A representation of a compact group together with a base point of the
/// ambient symmetric space whose orbit is certified.
#[derive(Clone, Debug)]
pub struct Construction {
    pub id: ConstructionId,
    pub representation: Representation<f64>,
    pub ambient: Ambient,
    pub base: BasePoint,
    pub splitting: CartanSplitting<f64>,
    pub expected: Expected,
    pub cube: Option<ExteriorCube<f64>>,
    pub perturbation: Option<Perturbation>,
    /// Added to the image of the i-th basis element of the Lie algebra.
    defect: Vec<CMatrix>,
}

fn quadric_construction() -> Result<Construction> {
    let rep = cartan_so3::<f64>()?;
    let bilinear = rep.bilinear().cloned().ok_or_else(|| Error::Construction("Cartan representation lacks β".into()))?;
    let quadric = ComplexQuadric::new(rep.hermitian().clone(), bilinear)?;
    let space = SymmetricMatrixSpace::trace_free();
    let base = QuadricPoint::new(&quadric, space.to_coords(&reference::quadric_base())?)?;
    let splitting = quadric_splitting(&quadric, &base)?;
    Ok(Construction {
        id: ConstructionId::Q3Sphere,
        representation: rep,
        ambient: Ambient::Quadric(quadric),
        base: BasePoint::Quadric(base),
        splitting,
        expected: Expected { isotropy_dim: 1, orbit_dim: 2, angle: 0.5f64.atan(), isotropy_name: "SO(2)" },
        cube: None,
        perturbation: None,
        defect: Vec::new(),
    })
}

fn complex_grassmann_construction() -> Result<Construction> {
    let rep = cartan_su3::<f64>()?;
    let space = SymmetricMatrixSpace::all();
    let [a1, a2] = reference::plane_a1_a2();
    let g = Grassmannian::complex(6)?;
    let base = PlanePoint::new(g, &[space.to_coords(&a1)?, space.to_coords(&a2)?])?;
    let splitting = grassmann_splitting(&base)?;
    Ok(Construction {
        id: ConstructionId::G2c6Cp2,
        representation: rep,
        ambient: Ambient::Grassmann(g),
        base: BasePoint::Plane(base),
        splitting,
        expected: Expected { isotropy_dim: 4, orbit_dim: 4, angle: 0.5f64.atan(), isotropy_name: "S(U(1)xU(2))" },
        cube: None,
        perturbation: None,
        defect: Vec::new(),
    })
}

fn quaternionic_grassmann_construction() -> Result<Construction> {
    let cube = ExteriorCube::<f64>::standard()?;
    let rep = sp3_fundamental_v1(&cube)?;
    let g = Grassmannian::quaternionic(7)?;
    let xi1 = cube.v1_coordinates(cube.xi1().coeffs());
    let xi2 = cube.v1_coordinates(cube.xi2().coeffs());
    let base = PlanePoint::new(g, &[xi1, xi2])?;
    let splitting = grassmann_splitting(&base)?;
    Ok(Construction {
        id: ConstructionId::G2h7Hp2,
        representation: rep,
        ambient: Ambient::Grassmann(g),
        base: BasePoint::Plane(base),
        splitting,
        expected: Expected { isotropy_dim: 13, orbit_dim: 8, angle: 0.5f64.atan(), isotropy_name: "Sp(1)xSp(2)" },
        cube: Some(cube),
        perturbation: None,
        defect: Vec::new(),
    })
}

fn random_unit_element(basis: &[CMatrix], rng: &mut SeededRng) -> CMatrix {
    let c = gaussian_reals::<f64>(basis.len(), rng);
    let n = basis[0].rows();
    let x = basis.iter().zip(&c).fold(ComplexMatrix::zeros(n, n), |acc, (b, &ci)| &acc + &b.scale_real(ci));
    let f = x.frobenius_norm();
    x.scale_real(1.0 / f)
}

impl Construction {
    pub fn build(id: ConstructionId) -> Result<Self> {
        match id {
            ConstructionId::Q3Sphere => quadric_construction(),
            ConstructionId::G2c6Cp2 => complex_grassmann_construction(),
            ConstructionId::G2h7Hp2 => quaternionic_grassmann_construction(),
        }
    }

    /// The construction with a structured defect of relative size `p.size`.
    pub fn perturbed(id: ConstructionId, p: Perturbation) -> Result<Self> {
        let mut c = Self::build(id)?;
        let mut rng = SeededRng::seed_from_u64(p.seed);
        match p.kind {
            PerturbationKind::BasePoint => {
                let d = random_unit_element(&c.splitting.m_basis, &mut rng);
                c.base = c.geodesic(&c.base, &d, p.size, 1e-9)?;
                c.splitting = match (&c.ambient, &c.base) {
                    (Ambient::Quadric(q), BasePoint::Quadric(z)) => quadric_splitting(q, z)?,
                    (_, BasePoint::Plane(b)) => grassmann_splitting(b)?,
                    _ => unreachable!("ambient and base point kinds agree"),
                };
            }
            PerturbationKind::Embedding | PerturbationKind::IsotropyContamination => {
                let pool = if p.kind == PerturbationKind::Embedding { &c.splitting.m_basis } else { &c.splitting.k_basis };
                let images = c.representation.generator_images();
                c.defect = images.iter().map(|x| random_unit_element(pool, &mut rng).scale_real(p.size * x.frobenius_norm())).collect();
            }
        }
        c.perturbation = Some(p);
        Ok(c)
    }

    pub fn group_dim(&self) -> usize {
        self.representation.group().dim()
    }

    /// The (possibly perturbed) differential `Φ*` on a Lie algebra element.
    pub fn phi_star(&self, x: &CMatrix) -> Result<CMatrix> {
        let base = self.representation.algebra_image(x)?;
        if self.defect.is_empty() {
            return Ok(base);
        }
        let coords = self.representation.group().coordinates(x)?;
        Ok(self.defect.iter().zip(coords).fold(base, |acc, (d, c)| &acc + &d.scale_real(c)))
    }

    /// `Φ*` of the fixed Lie algebra basis.
    pub fn phi_star_basis(&self) -> Result<Vec<CMatrix>> {
        self.representation.group().basis().iter().map(|x| self.phi_star(x)).collect()
    }

    /// Orthogonal projector onto the base point (`z z^H` or `B B^H`).
    pub fn projector(&self, p: &BasePoint) -> CMatrix {
        match p {
            BasePoint::Quadric(z) => projector(&ComplexMatrix::from_columns(z.z().len(), std::slice::from_ref(z.z()))),
            BasePoint::Plane(b) => b.projector(),
        }
    }

    /// Tangent vector of an ambient algebra element, as a matrix (a column for
    /// the quadric, `Hom(Z₀, Z₀^⊥)` for planes).
    pub fn tangent(&self, p: &BasePoint, x: &CMatrix) -> Result<CMatrix> {
        match (&self.ambient, p) {
            (Ambient::Quadric(q), BasePoint::Quadric(z)) => {
                let w = z.tangent_from_algebra(q, x)?;
                Ok(ComplexMatrix::from_columns(w.len(), &[w]))
            }
            (_, BasePoint::Plane(b)) => Ok(b.tangent_from_algebra(x)?.hom),
            _ => Err(Error::Construction("base point does not match the ambient space".into())),
        }
    }

    pub fn angle(&self, p: &BasePoint, w: &CMatrix) -> Result<f64> {
        match (&self.ambient, p) {
            (Ambient::Quadric(q), BasePoint::Quadric(z)) => characteristic_angle_quadric(q, z, &w.column(0)),
            (_, BasePoint::Plane(b)) => characteristic_angle_grassmann(b, &TangentAtPlane { hom: w.clone() }),
            _ => Err(Error::Construction("base point does not match the ambient space".into())),
        }
    }

    pub fn geodesic(&self, p: &BasePoint, direction: &CMatrix, t: f64, tol: f64) -> Result<BasePoint> {
        match (&self.ambient, p) {
            (Ambient::Quadric(q), BasePoint::Quadric(z)) => Ok(BasePoint::Quadric(z.geodesic(q, &self.splitting, direction, t, tol)?)),
            (_, BasePoint::Plane(b)) => Ok(BasePoint::Plane(b.geodesic(&self.splitting, direction, t, tol)?)),
            _ => Err(Error::Construction("base point does not match the ambient space".into())),
        }
    }

    /// `ρ(g) · p` for `ρ(g)` an ambient isometry.
    pub fn transform(&self, p: &BasePoint, rho_g: &CMatrix) -> Result<BasePoint> {
        match (&self.ambient, p) {
            (Ambient::Quadric(q), BasePoint::Quadric(z)) => Ok(BasePoint::Quadric(z.transform(q, rho_g)?)),
            (_, BasePoint::Plane(b)) => Ok(BasePoint::Plane(b.transform(rho_g)?)),
            _ => Err(Error::Construction("base point does not match the ambient space".into())),
        }
    }

    pub fn distance(&self, a: &BasePoint, b: &BasePoint) -> f64 {
        self.projector(a).distance(&self.projector(b))
    }

    /// Largest violation of the point invariants.
    pub fn point_residual(&self, p: &BasePoint) -> Result<f64> {
        match (&self.ambient, p) {
            (Ambient::Quadric(q), BasePoint::Quadric(z)) => {
                let (h, b) = z.residuals(q)?;
                Ok(h.max(b))
            }
            (_, BasePoint::Plane(b)) => {
                let (o, j) = b.residuals();
                Ok(o.max(j))
            }
            _ => Err(Error::Construction("base point does not match the ambient space".into())),
        }
    }

    /// For the quadric constructions, the coordinates of a 3×3 matrix.
    pub fn matrix_space(&self) -> Option<SymmetricMatrixSpace<f64>> {
        match self.id {
            ConstructionId::Q3Sphere => Some(SymmetricMatrixSpace::trace_free()),
            ConstructionId::G2c6Cp2 => Some(SymmetricMatrixSpace::all()),
            ConstructionId::G2h7Hp2 => None,
        }
    }

    /// Orthonormal real basis of `span_R {tangent(Φ*(X)) : X ∈ basis}`.
    pub fn tangent_space(&self, algebra: &[CMatrix]) -> Result<Vec<CMatrix>> {
        let tangents = algebra.iter().map(|x| self.tangent(&self.base, &self.phi_star(x)?)).collect::<Result<Vec<_>>>()?;
        Ok(real_orthonormalize(&tangents, 1e-8))
    }

    /// The quadric point as a 3×3 matrix (quadric construction only).
    pub fn base_matrix(&self) -> Option<CMatrix> {
        match (&self.base, self.matrix_space()) {
            (BasePoint::Quadric(z), Some(s)) => s.from_coords(z.z()).ok(),
            _ => None,
        }
    }
}

/// `v ↦ (re, im)` entries of a complex vector, as a real column.
pub(crate) fn real_column(m: &CMatrix) -> CVector {
    let data = m.data();
    ComplexVector::from_fn(2 * data.len(), |i| {
        let z = data[i / 2];
        Complex::new(if i % 2 == 0 { z.re } else { z.im }, 0.0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_roundtrip() {
        for id in ConstructionId::ALL {
            assert_eq!(id.as_str().parse::<ConstructionId>().unwrap(), id);
            assert_eq!(serde_json::to_string(&id).unwrap(), format!("\"{id}\""));
        }
        assert!(matches!("bogus".parse::<ConstructionId>(), Err(Error::Usage(_))));
    }

    #[test]
    fn constructions_build_with_valid_points() {
        for id in ConstructionId::ALL {
            let c = Construction::build(id).unwrap();
            assert!(c.point_residual(&c.base).unwrap() < 1e-12, "{id}");
        }
    }
}
