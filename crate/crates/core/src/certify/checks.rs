//! Certification checks shared by all constructions.

use rand::SeedableRng;
use serde::Serialize;

use super::construction::{real_column, Construction};
use crate::error::{Error, Result};
use crate::linalg::random::gaussian_reals;
use crate::linalg::{nullspace, real_orthonormalize, real_projection, real_span_basis, ComplexMatrix, SeededRng};
use crate::CMatrix;

/// Kernel of a real-linear map on the Lie algebra, given by the images of the
/// basis, together with the rank margin.
struct RealKernel {
    coefficients: Vec<Vec<f64>>,
    rank: usize,
    margin: f64,
}

fn real_kernel(images: &[CMatrix], rtol: f64) -> RealKernel {
    let rows = 2 * images[0].rows() * images[0].cols();
    let a = ComplexMatrix::from_columns(rows, &images.iter().map(real_column).collect::<Vec<_>>());
    let ns = nullspace(&a, rtol);
    // The matrix is real, so real and imaginary parts of null vectors are null.
    let mut parts = Vec::new();
    for v in ns.basis.columns() {
        parts.push(ComplexMatrix::from_columns(v.len(), &[v.real_part()]));
        parts.push(ComplexMatrix::from_columns(v.len(), &[v.imag_part()]));
    }
    let coefficients =
        real_orthonormalize(&parts, 1e-8).into_iter().take(ns.basis.cols()).map(|m| m.data().iter().map(|z| z.re).collect()).collect();
    RealKernel { coefficients, rank: ns.rank, margin: ns.margin }
}

/// `𝔨` and its orthogonal complement `𝔪` inside the Lie algebra of the group.
#[derive(Clone, Debug)]
pub struct IsotropyAlgebra {
    pub k_basis: Vec<CMatrix>,
    pub m_basis: Vec<CMatrix>,
    pub margin: f64,
}

impl IsotropyAlgebra {
    pub fn dim(&self) -> usize {
        self.k_basis.len()
    }
}

/// Solves `[Φ*(Y), P] = 0` for the projector `P` onto the base point.
pub fn isotropy_algebra(c: &Construction) -> Result<IsotropyAlgebra> {
    let group = c.representation.group();
    let p = c.projector(&c.base);
    let images = c.phi_star_basis()?.iter().map(|x| x.commutator(&p)).collect::<Vec<_>>();
    let kernel = real_kernel(&images, 1e-9);
    if kernel.margin < 1e3 {
        return Err(Error::IndeterminateRank(format!("isotropy rank margin {:e}", kernel.margin)));
    }
    let k: Vec<CMatrix> = kernel.coefficients.iter().map(|coef| group.combination(coef)).collect::<Result<_>>()?;
    let k_basis = real_orthonormalize(&k, 1e-8);
    // Residuals are judged against the original norm, not their own.
    let rest: Vec<CMatrix> = group
        .basis()
        .iter()
        .map(|x| (x - &real_projection(&k_basis, x), x.frobenius_norm()))
        .filter(|(r, n)| r.frobenius_norm() > 1e-8 * n)
        .map(|(r, _)| r)
        .collect();
    let m_basis = real_span_basis(&rest, 1e-8);
    Ok(IsotropyAlgebra { k_basis, m_basis, margin: kernel.margin })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OrbitDimension {
    pub dim: usize,
    pub margin: f64,
}

/// Rank of `X ↦ tangent(Φ*(X))`, cross-checked against `dim G − dim 𝔨`.
pub fn orbit_dimension(c: &Construction, iso: &IsotropyAlgebra) -> Result<OrbitDimension> {
    let images = c.phi_star_basis()?.iter().map(|x| c.tangent(&c.base, x)).collect::<Result<Vec<_>>>()?;
    let kernel = real_kernel(&images, 1e-9);
    if kernel.margin < 1e3 {
        return Err(Error::IndeterminateRank(format!("orbit rank margin {:e}", kernel.margin)));
    }
    if kernel.rank + iso.dim() != c.group_dim() {
        return Err(Error::Inconsistent(format!(
            "tangent rank {} and isotropy dimension {} do not add up to {}",
            kernel.rank,
            iso.dim(),
            c.group_dim()
        )));
    }
    Ok(OrbitDimension { dim: kernel.rank, margin: kernel.margin })
}

/// Largest relative component of `Φ*(𝔪)` outside `m̃`.
pub fn cartan_compatibility(c: &Construction, iso: &IsotropyAlgebra) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for x in &iso.m_basis {
        let y = c.phi_star(x)?;
        worst = worst.max(c.splitting.k_ratio(&y)).max(c.splitting.outside_ratio(&y));
    }
    Ok(worst)
}

fn random_m_element(iso: &IsotropyAlgebra, rng: &mut SeededRng) -> CMatrix {
    let coef = gaussian_reals::<f64>(iso.m_basis.len(), rng);
    let n = iso.m_basis[0].rows();
    let x = iso.m_basis.iter().zip(&coef).fold(ComplexMatrix::zeros(n, n), |acc, (b, &t)| &acc + &b.scale_real(t));
    let f = x.frobenius_norm();
    x.scale_real(1.0 / f)
}

/// `exp(t Φ*(X)) · p` against `Φ(exp(t X)) · p` on a grid of `t ∈ [0, 2π]`, for
/// the first `𝔪` basis vector and random unit `X ∈ 𝔪`. Returns the largest
/// projector distance or point-invariant violation.
pub fn geodesic_orbit_check(c: &Construction, iso: &IsotropyAlgebra, directions: usize, grid: usize, tol: f64, seed: u64) -> Result<f64> {
    if iso.m_basis.is_empty() || directions == 0 {
        return Ok(0.0);
    }
    let group = c.representation.group();
    let mut rng = SeededRng::seed_from_u64(seed);
    let mut dirs = vec![iso.m_basis[0].clone()];
    while dirs.len() < directions {
        dirs.push(random_m_element(iso, &mut rng));
    }
    let mut worst: f64 = 0.0;
    for x in &dirs {
        let d = c.phi_star(x)?;
        for j in 0..grid {
            let t = if grid > 1 { std::f64::consts::TAU * j as f64 / (grid - 1) as f64 } else { 0.0 };
            let along = c.geodesic(&c.base, &d, t, tol)?;
            let g = group.exp(&x.scale_real(t))?;
            let moved = c.transform(&c.base, &c.representation.group_image(&g)?)?;
            worst = worst.max(c.distance(&along, &moved)).max(c.point_residual(&along)?);
        }
    }
    Ok(worst)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AngleCensus {
    pub samples: usize,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    /// `max |φ − φ_expected|`.
    pub max_deviation: f64,
}

/// Characteristic angles of unit tangent vectors of the orbit: the tangent of
/// the first `𝔪` basis vector, then random directions.
pub fn angle_census(c: &Construction, iso: &IsotropyAlgebra, samples: usize, seed: u64) -> Result<AngleCensus> {
    let tangent_basis = c.tangent_space(&iso.m_basis)?;
    if tangent_basis.is_empty() {
        return Err(Error::UndefinedAngle("orbit has no tangent directions".into()));
    }
    let first = c.tangent(&c.base, &c.phi_star(&iso.m_basis[0])?)?;
    let mut rng = SeededRng::seed_from_u64(seed);
    let (rows, cols) = tangent_basis[0].shape();
    let mut angles = Vec::with_capacity(samples);
    for i in 0..samples {
        let w = if i == 0 {
            first.clone()
        } else {
            let coef = gaussian_reals::<f64>(tangent_basis.len(), &mut rng);
            tangent_basis.iter().zip(&coef).fold(ComplexMatrix::zeros(rows, cols), |acc, (b, &t)| &acc + &b.scale_real(t))
        };
        let w = w.scale_real(1.0 / w.frobenius_norm());
        angles.push(c.angle(&c.base, &w)?);
    }
    let target = c.expected.angle;
    let min = angles.iter().copied().fold(f64::INFINITY, f64::min);
    let max = angles.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mean = angles.iter().sum::<f64>() / angles.len().max(1) as f64;
    let max_deviation = angles.iter().map(|a| (a - target).abs()).fold(0.0, f64::max);
    Ok(AngleCensus { samples, min, max, mean, max_deviation })
}

/// Projector distance between `ρ(g) · p` and `p`; errors if `g` is not in the group.
pub fn isotropy_distance(c: &Construction, g: &CMatrix) -> Result<f64> {
    let group = c.representation.group();
    let r = group.group_residual(g)?;
    if r > 1e-9 {
        return Err(Error::InvalidInput(format!("matrix is not in {} (residual {r:e})", group.name())));
    }
    let moved = c.transform(&c.base, &c.representation.group_image(g)?)?;
    Ok(c.distance(&moved, &c.base))
}

/// Whether `g` fixes the base point, up to projector distance `1e-10`.
pub fn isotropy_membership_test(c: &Construction, g: &CMatrix) -> Result<bool> {
    Ok(isotropy_distance(c, g)? < 1e-10)
}

/// Exponentials of random elements of `𝔨`.
pub fn isotropy_samples(c: &Construction, iso: &IsotropyAlgebra, count: usize, seed: u64) -> Result<Vec<CMatrix>> {
    let group = c.representation.group();
    let mut rng = SeededRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let coef = gaussian_reals::<f64>(iso.k_basis.len(), &mut rng);
            let n = group.matrix_size();
            let k = iso.k_basis.iter().zip(&coef).fold(ComplexMatrix::zeros(n, n), |acc, (b, &t)| &acc + &b.scale_real(t));
            group.exp(&k)
        })
        .collect()
}
