//! Serializable summaries for `construct` and `branch`.

use std::fmt::Write;

use serde::Serialize;

use skewgeo_core::certify::{
    isotropy_algebra, orbit_dimension, Ambient, BasePoint, CertifyConfig, Construction, ConstructionId, Perturbation,
};
use skewgeo_core::exterior::ExteriorCube;
use skewgeo_core::lie::{branching_chain, BranchingSummary};
use skewgeo_core::{CMatrix, Complex64, Result};

#[derive(Debug, Serialize)]
pub struct ConstructionSummary {
    pub construction: String,
    pub group: String,
    pub group_dim: usize,
    pub representation: String,
    pub representation_dim: usize,
    pub ambient: String,
    pub ambient_real_dim: usize,
    pub isotropy: String,
    pub isotropy_dim: usize,
    pub orbit_dim: usize,
    /// `Z₀` as a 3×3 matrix for the quadric, otherwise an orthonormal basis
    /// of the plane as columns.
    pub base_point: CMatrix,
    pub tangent_basis: Vec<CMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y1: Option<CMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y2: Option<CMatrix>,
    #[serde(rename = "dim_V1", skip_serializing_if = "Option::is_none")]
    pub dim_v1: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perturbation: Option<Perturbation>,
}

impl ConstructionSummary {
    pub fn build(id: ConstructionId, perturbation: Option<Perturbation>) -> Result<Self> {
        let c = match perturbation {
            Some(p) => Construction::perturbed(id, p)?,
            None => Construction::build(id)?,
        };
        let iso = isotropy_algebra(&c)?;
        let orbit = orbit_dimension(&c, &iso)?;
        let group = c.representation.group();
        let space = c.matrix_space();
        let as_matrix = |t: CMatrix| -> Result<CMatrix> {
            match (&space, c.id) {
                (Some(s), ConstructionId::Q3Sphere) => s.from_coords(&t.column(0)),
                _ => Ok(t),
            }
        };
        let tangent_basis = c.tangent_space(&iso.m_basis)?.into_iter().map(as_matrix).collect::<Result<Vec<_>>>()?;
        let (y1, y2) = if c.id == ConstructionId::Q3Sphere {
            let y = |i: usize| -> Result<CMatrix> { as_matrix(c.tangent(&c.base, &c.phi_star(&group.basis()[i])?)?) };
            (Some(y(0)?), Some(y(1)?))
        } else {
            (None, None)
        };
        let base_point = match &c.base {
            BasePoint::Quadric(_) => c.base_matrix().expect("quadric construction has a matrix model"),
            BasePoint::Plane(p) => p.basis().clone(),
        };
        let (ambient, ambient_real_dim) = match &c.ambient {
            Ambient::Quadric(q) => (format!("Q{} in CP{}", q.dim() - 2, q.dim() - 1), 2 * (q.dim() - 2)),
            Ambient::Grassmann(g) if g.is_quaternionic() => (format!("G2(H{})", g.ambient_dim() / 2), g.real_dim()),
            Ambient::Grassmann(g) => (format!("G2(C{})", g.ambient_dim()), g.real_dim()),
        };
        Ok(Self {
            construction: id.to_string(),
            group: group.name().to_string(),
            group_dim: group.dim(),
            representation: c.representation.name().to_string(),
            representation_dim: c.representation.dim(),
            ambient,
            ambient_real_dim,
            isotropy: c.expected.isotropy_name.to_string(),
            isotropy_dim: iso.dim(),
            orbit_dim: orbit.dim,
            base_point,
            tangent_basis,
            y1,
            y2,
            dim_v1: c.cube.as_ref().map(|k: &ExteriorCube<f64>| k.v1.cols()),
            kappa_rank: c.cube.as_ref().map(|k| k.kappa_rank),
            perturbation: c.perturbation,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "construction {}", self.construction);
        let _ = writeln!(out, "  group           {} (dim {})", self.group, self.group_dim);
        let _ = writeln!(out, "  representation  {} (dim {})", self.representation, self.representation_dim);
        let _ = writeln!(out, "  ambient         {} (real dim {})", self.ambient, self.ambient_real_dim);
        let _ = writeln!(out, "  isotropy        {} (dim {})", self.isotropy, self.isotropy_dim);
        let _ = writeln!(out, "  orbit dim       {}", self.orbit_dim);
        if let Some(d) = self.dim_v1 {
            let _ = writeln!(out, "  dim V1          {d}");
        }
        if let Some(r) = self.kappa_rank {
            let _ = writeln!(out, "  rank kappa      {r}");
        }
        if let Some(p) = &self.perturbation {
            let _ = writeln!(out, "  perturbation    {} size {:e} seed {}", p.kind, p.size, p.seed);
        }
        let label = if self.y1.is_some() { "Z0" } else { "base plane" };
        write_matrix(&mut out, label, &self.base_point);
        if let (Some(y1), Some(y2)) = (&self.y1, &self.y2) {
            write_matrix(&mut out, "Y1", y1);
            write_matrix(&mut out, "Y2", y2);
        }
        for (i, t) in self.tangent_basis.iter().enumerate() {
            write_matrix(&mut out, &format!("tangent[{i}]"), t);
        }
        out
    }
}

fn entry(z: Complex64) -> String {
    // Avoid printing negative zero.
    let clean = |x: f64| if x.abs() < 5e-16 { 0.0 } else { x };
    format!("{:+.6}{:+.6}i", clean(z.re), clean(z.im))
}

fn write_matrix(out: &mut String, label: &str, m: &CMatrix) {
    let _ = writeln!(out, "  {label}:");
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| entry(m[(i, j)])).collect();
        let _ = writeln!(out, "    [{}]", row.join("  "));
    }
}

#[derive(Debug, Serialize)]
pub struct BranchOutput {
    #[serde(flatten)]
    pub summary: BranchingSummary,
    pub condition_bound: f64,
    pub residual_bound: f64,
    pub pass: bool,
    pub seed: u64,
}

impl BranchOutput {
    pub fn build(config: &CertifyConfig) -> Result<Self> {
        let cube = ExteriorCube::<f64>::standard()?;
        let summary = branching_chain(&cube, config.seed)?.summary();
        let tol = config.tolerances;
        let pass = summary.vc_dim == 6
            && summary.so3_components == [1, 5]
            && summary.su3_intertwiner_condition < tol.condition
            && summary.so3_intertwiner_condition < tol.condition
            && summary.su3_intertwiner_residual <= tol.algebraic
            && summary.so3_intertwiner_residual <= tol.algebraic;
        Ok(Self { summary, condition_bound: tol.condition, residual_bound: tol.algebraic, pass, seed: config.seed })
    }

    pub fn to_text(&self) -> String {
        let s = &self.summary;
        let mut out = String::new();
        let _ = writeln!(out, "branching Sp(3) > SU(3) > SO(3): {}", if self.pass { "PASS" } else { "FAIL" });
        let _ = writeln!(out, "  V1 dim                      {}", s.v1_dim);
        let _ = writeln!(out, "  V1 complex commutant dim    {}", s.v1_complex_commutant_dim);
        let _ = writeln!(out, "  SU(3) components            {:?}", s.su3_components);
        let _ = writeln!(out, "  V_C dim                     {}", s.vc_dim);
        let _ = writeln!(out, "  V_C total complexity        {:.3e}", s.vc_total_complexity);
        let _ = writeln!(out, "  SU(3) intertwiner condition {:.6e} (< {:e})", s.su3_intertwiner_condition, self.condition_bound);
        let _ = writeln!(out, "  SU(3) intertwiner residual  {:.3e}", s.su3_intertwiner_residual);
        let _ = writeln!(out, "  SO(3) components            {:?}", s.so3_components);
        let _ = writeln!(out, "  SO(3) intertwiner condition {:.6e} (< {:e})", s.so3_intertwiner_condition, self.condition_bound);
        let _ = writeln!(out, "  SO(3) intertwiner residual  {:.3e}", s.so3_intertwiner_residual);
        out
    }
}
