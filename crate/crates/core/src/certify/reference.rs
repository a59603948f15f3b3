//! Explicit matrices for the constructions, written out by hand so that the
//! computed objects can be compared against them entrywise.

use num_complex::Complex;

use crate::linalg::ComplexMatrix;
use crate::CMatrix;

fn m(rows: [[(f64, f64); 3]; 3]) -> CMatrix {
    ComplexMatrix::from_fn(3, 3, |i, j| Complex::new(rows[i][j].0, rows[i][j].1))
}

const O: (f64, f64) = (0.0, 0.0);

/// Base point of the quadric: `½ [[0, 1, i], [1, 0, 0], [i, 0, 0]]`.
pub fn quadric_base() -> CMatrix {
    m([[O, (0.5, 0.0), (0.0, 0.5)], [(0.5, 0.0), O, O], [(0.0, 0.5), O, O]])
}

/// `Y₁ = X₁ Z₀ − Z₀ X₁ = [[1, 0, 0], [0, −1, −i/2], [0, −i/2, 0]]`.
pub fn tangent_y1() -> CMatrix {
    m([[(1.0, 0.0), O, O], [O, (-1.0, 0.0), (0.0, -0.5)], [O, (0.0, -0.5), O]])
}

/// `Y₂ = X₂ Z₀ − Z₀ X₂ = [[i, 0, 0], [0, 0, −1/2], [0, −1/2, −i]]`.
pub fn tangent_y2() -> CMatrix {
    m([[(0.0, 1.0), O, O], [O, O, (-0.5, 0.0)], [O, (-0.5, 0.0), (0.0, -1.0)]])
}

/// Real spanning set of `W₁ = {[[0, a, b], [a, 0, 0], [b, 0, 0]]}`.
pub fn w1_span() -> Vec<CMatrix> {
    let one = (1.0, 0.0);
    vec![m([[O, one, O], [one, O, O], [O, O, O]]), m([[O, O, one], [O, O, O], [one, O, O]])]
}

/// Real spanning set of `W₂ = {[[a, 0, 0], [0, b, d], [0, d, c]] : a + b + c = 0}`.
pub fn w2_span() -> Vec<CMatrix> {
    let one = (1.0, 0.0);
    let neg = (-1.0, 0.0);
    vec![m([[one, O, O], [O, neg, O], [O, O, O]]), m([[one, O, O], [O, O, O], [O, O, neg]]), m([[O, O, O], [O, O, one], [O, one, O]])]
}

/// `Y = [[0, t, s], [−t, 0, 0], [−s, 0, 0]]`, a generic element of `𝔪`.
pub fn m_element(t: f64, s: f64) -> CMatrix {
    m([[O, (t, 0.0), (s, 0.0)], [(-t, 0.0), O, O], [(-s, 0.0), O, O]])
}

/// `X = [[0, a, b], [a, 0, 0], [b, 0, 0]] ∈ W₁`.
pub fn w1_element(a: f64, b: f64) -> CMatrix {
    m([[O, (a, 0.0), (b, 0.0)], [(a, 0.0), O, O], [(b, 0.0), O, O]])
}

/// `X = [[a, 0, 0], [0, b, d], [0, d, c]] ∈ W₂` with `c = −a − b`.
pub fn w2_element(a: f64, b: f64, d: f64) -> CMatrix {
    let c = -a - b;
    m([[(a, 0.0), O, O], [O, (b, 0.0), (d, 0.0)], [O, (d, 0.0), (c, 0.0)]])
}

/// `[[−2ta − 2sb, 0, 0], [0, 2ta, sa + tb], [0, tb + sa, 2sb]]` for `X ∈ W₁`.
/// These entries are those of `XY − YX = −(Φ*Y) X`.
pub fn block_formula_w1(t: f64, s: f64, a: f64, b: f64) -> CMatrix {
    let r = |x: f64| (x, 0.0);
    m([[r(-2.0 * t * a - 2.0 * s * b), O, O], [O, r(2.0 * t * a), r(s * a + t * b)], [O, r(t * b + s * a), r(2.0 * s * b)]])
}

/// `[[0, (a−b)t − ds, −dt + (a−c)s], [(a−b)t − ds, 0, 0], [−dt + (a−c)s, 0, 0]]`
/// for `X ∈ W₂`; again the entries of `XY − YX = −(Φ*Y) X`.
pub fn block_formula_w2(t: f64, s: f64, a: f64, b: f64, d: f64) -> CMatrix {
    let c = -a - b;
    let p = ((a - b) * t - d * s, 0.0);
    let q = (-d * t + (a - c) * s, 0.0);
    m([[O, p, q], [p, O, O], [q, O, O]])
}

/// Rotation `[[1, 0, 0], [0, r, −s], [0, s, r]]` with `r = cos θ`, `s = sin θ`.
pub fn isotropy_rotation(theta: f64) -> CMatrix {
    let (s, r) = theta.sin_cos();
    m([[(1.0, 0.0), O, O], [O, (r, 0.0), (-s, 0.0)], [O, (s, 0.0), (r, 0.0)]])
}

/// `[[0, 1, 0], [1, 0, 0], [0, 0, −1]]`: exchanges `e₁` and `e₂`, determinant one.
pub fn swap_e1_e2() -> CMatrix {
    m([[O, (1.0, 0.0), O], [(1.0, 0.0), O, O], [O, O, (-1.0, 0.0)]])
}

/// `A₁ = E₁₂ + E₂₁` and `A₂ = E₁₃ + E₃₁`, spanning the base plane of `G₂(C⁶)`.
pub fn plane_a1_a2() -> [CMatrix; 2] {
    let w = w1_span();
    [w[0].clone(), w[1].clone()]
}

/// `diag(e^{−2iα}, e^{iα} R(θ))`, an element of `S(U(1) × U(2))`.
pub fn block_diagonal_su3(alpha: f64, theta: f64) -> CMatrix {
    let (s, c) = theta.sin_cos();
    let p = Complex::from_polar(1.0, alpha);
    let mut out = ComplexMatrix::zeros(3, 3);
    out[(0, 0)] = Complex::from_polar(1.0, -2.0 * alpha);
    out[(1, 1)] = p * c;
    out[(1, 2)] = -p * s;
    out[(2, 1)] = p * s;
    out[(2, 2)] = p * c;
    out
}
