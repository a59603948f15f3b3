//! The exterior cube `Λ³C⁶`: wedge products, induced maps, the Hermitian
//! product `Ĥ`, the quaternionic structure `J⁽³⁾` and the contraction `κ`.
//!
//! Coefficients are stored against the lexicographic basis
//! `e_j ∧ e_k ∧ e_l`, `j < k < l`. Index 0 is `(1,2,3)`, index 19 is `(4,5,6)`.

use std::fmt;

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    nullspace, orthonormalize, quaternionic_orthonormalize, AntilinearStructure, BilinearForm, ComplexMatrix, ComplexVector,
    SesquilinearForm, StructureSign, Symmetry,
};
use crate::scalar::Real;

/// Dimension of the underlying space `C⁶`.
pub const BASE_DIM: usize = 6;
/// Dimension of `Λ³C⁶`.
pub const CUBE_DIM: usize = 20;

/// A strictly increasing triple `(j, k, l)`, stored 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TripleIndex {
    j: usize,
    k: usize,
    l: usize,
}

const fn build_triples() -> [TripleIndex; CUBE_DIM] {
    let mut out = [TripleIndex { j: 0, k: 0, l: 0 }; CUBE_DIM];
    let mut n = 0;
    let mut j = 0;
    while j < BASE_DIM {
        let mut k = j + 1;
        while k < BASE_DIM {
            let mut l = k + 1;
            while l < BASE_DIM {
                out[n] = TripleIndex { j, k, l };
                n += 1;
                l += 1;
            }
            k += 1;
        }
        j += 1;
    }
    out
}

/// All 20 triples in lexicographic order.
pub const TRIPLES: [TripleIndex; CUBE_DIM] = build_triples();

impl TripleIndex {
    /// From 1-based indices, which must satisfy `1 <= j < k < l <= 6`.
    pub fn new(j: usize, k: usize, l: usize) -> Result<Self> {
        if !(1 <= j && j < k && k < l && l <= BASE_DIM) {
            return Err(Error::InvalidInput(format!("({j},{k},{l}) is not a strictly increasing triple in 1..=6")));
        }
        Ok(Self { j: j - 1, k: k - 1, l: l - 1 })
    }

    /// 0-based entries.
    pub fn zero_based(self) -> [usize; 3] {
        [self.j, self.k, self.l]
    }

    /// Position in the lexicographic basis.
    pub fn position(self) -> usize {
        TRIPLES.iter().position(|t| *t == self).expect("every valid triple is tabulated")
    }

    /// Sorts three distinct 0-based indices; returns the triple and the parity
    /// of the sorting permutation, or `None` on a repeated index.
    pub fn sort(a: usize, b: usize, c: usize) -> Option<(Self, i8)> {
        if a == b || b == c || a == c || a >= BASE_DIM || b >= BASE_DIM || c >= BASE_DIM {
            return None;
        }
        let mut v = [a, b, c];
        let mut sign = 1i8;
        for i in 0..3 {
            for m in 0..2 - i {
                if v[m] > v[m + 1] {
                    v.swap(m, m + 1);
                    sign = -sign;
                }
            }
        }
        Some((Self { j: v[0], k: v[1], l: v[2] }, sign))
    }
}

impl fmt::Display for TripleIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.j + 1, self.k + 1, self.l + 1)
    }
}

/// Element of `Λ³C⁶`, as coefficients in the lexicographic basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>"))]
#[serde(try_from = "ComplexVector<T>", into = "ComplexVector<T>")]
pub struct Trivector<T: Real> {
    coeffs: ComplexVector<T>,
}

impl<T: Real> TryFrom<ComplexVector<T>> for Trivector<T> {
    type Error = Error;
    fn try_from(v: ComplexVector<T>) -> Result<Self> {
        Self::new(v)
    }
}

impl<T: Real> From<Trivector<T>> for ComplexVector<T> {
    fn from(t: Trivector<T>) -> Self {
        t.coeffs
    }
}

impl<T: Real> Trivector<T> {
    pub fn new(coeffs: ComplexVector<T>) -> Result<Self> {
        if coeffs.len() != CUBE_DIM {
            return Err(Error::DimensionMismatch(format!("trivector needs {CUBE_DIM} coefficients, got {}", coeffs.len())));
        }
        Ok(Self { coeffs })
    }

    pub fn zero() -> Self {
        Self { coeffs: ComplexVector::zeros(CUBE_DIM) }
    }

    pub fn basis(t: TripleIndex) -> Self {
        Self { coeffs: ComplexVector::basis(CUBE_DIM, t.position()) }
    }

    /// `e_a ∧ e_b ∧ e_c` for 0-based, not necessarily sorted indices.
    pub fn basis_wedge(a: usize, b: usize, c: usize) -> Self {
        match TripleIndex::sort(a, b, c) {
            Some((t, s)) => Self::basis(t).scale(Complex::new(T::from(s).unwrap(), T::zero())),
            None => Self::zero(),
        }
    }

    pub fn coeffs(&self) -> &ComplexVector<T> {
        &self.coeffs
    }

    pub fn coeff(&self, t: TripleIndex) -> Complex<T> {
        self.coeffs[t.position()]
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self { coeffs: self.coeffs.scale(s) }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { coeffs: &self.coeffs + &other.coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { coeffs: &self.coeffs - &other.coeffs }
    }
}

fn det3<T: Real>(m: &ComplexMatrix<T>, rows: [usize; 3], cols: [usize; 3]) -> Complex<T> {
    let a = |i: usize, j: usize| m[(rows[i], cols[j])];
    a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
        + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
}

/// The 20×20 matrix of 3×3 minors of a 6×6 matrix, rows and columns in
/// lexicographic triple order.
fn third_compound<T: Real>(a: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(CUBE_DIM, CUBE_DIM, |r, c| det3(a, TRIPLES[r].zero_based(), TRIPLES[c].zero_based()))
}

fn check_six<T: Real>(a: &ComplexMatrix<T>, what: &str) -> Result<()> {
    if a.shape() != (BASE_DIM, BASE_DIM) {
        return Err(Error::DimensionMismatch(format!("{what} must be 6x6, got {}x{}", a.rows(), a.cols())));
    }
    Ok(())
}

/// `v1 ∧ v2 ∧ v3`.
pub fn wedge3<T: Real>(v1: &ComplexVector<T>, v2: &ComplexVector<T>, v3: &ComplexVector<T>) -> Result<Trivector<T>> {
    if [v1, v2, v3].iter().any(|v| v.len() != BASE_DIM) {
        return Err(Error::DimensionMismatch("wedge3 needs vectors of dimension 6".into()));
    }
    let m = ComplexMatrix::from_columns(BASE_DIM, &[v1.clone(), v2.clone(), v3.clone()]);
    let coeffs = ComplexVector::from_fn(CUBE_DIM, |r| det3(&m, TRIPLES[r].zero_based(), [0, 1, 2]));
    Ok(Trivector { coeffs })
}

/// `A⁽³⁾` for a linear or antilinear `A` on `C⁶`. In the antilinear case the
/// map is `ξ ↦ matrix · conj(ξ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct InducedMap3<T> {
    pub matrix: ComplexMatrix<T>,
    pub antilinear: bool,
}

impl<T: Real> InducedMap3<T> {
    pub fn apply(&self, xi: &Trivector<T>) -> Trivector<T> {
        let v = if self.antilinear { xi.coeffs.conj() } else { xi.coeffs.clone() };
        Trivector { coeffs: self.matrix.mul_vec(&v) }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let rhs = if self.antilinear { other.matrix.conj() } else { other.matrix.clone() };
        Self { matrix: &self.matrix * &rhs, antilinear: self.antilinear != other.antilinear }
    }
}

/// Induced map on `Λ³C⁶`. For antilinear `v ↦ a · conj(v)` pass the matrix `a`
/// and `antilinear = true`.
pub fn induced_map3<T: Real>(a: &ComplexMatrix<T>, antilinear: bool) -> Result<InducedMap3<T>> {
    check_six(a, "induced_map3 input")?;
    Ok(InducedMap3 { matrix: third_compound(a), antilinear })
}

/// The derivation `Y⁽³⁾` induced by a linear `Y` on `C⁶`, so that
/// `exp(t Y)⁽³⁾ = exp(t Y⁽³⁾)`.
pub fn derivation3<T: Real>(y: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    check_six(y, "derivation3 input")?;
    let mut out = ComplexMatrix::zeros(CUBE_DIM, CUBE_DIM);
    for (c, t) in TRIPLES.iter().enumerate() {
        let idx = t.zero_based();
        for slot in 0..3 {
            for row in 0..BASE_DIM {
                let coef = y[(row, idx[slot])];
                if coef == Complex::zero() {
                    continue;
                }
                let mut w = idx;
                w[slot] = row;
                if let Some((s, sign)) = TripleIndex::sort(w[0], w[1], w[2]) {
                    let r = s.position();
                    out[(r, c)] = out[(r, c)] + coef * T::from(sign).unwrap();
                }
            }
        }
    }
    Ok(out)
}

/// `Ĥ` on `Λ³C⁶`: Gram entries are 3×3 minors of the Gram matrix of `h6`.
pub fn hermitian_product_cube<T: Real>(h6: &SesquilinearForm<T>) -> Result<SesquilinearForm<T>> {
    check_six(h6.gram(), "Gram matrix of H")?;
    SesquilinearForm::new(third_compound(h6.gram()))
}

/// `ω(v, w) = H(v, J w)`.
pub fn symplectic_form<T: Real>(h: &SesquilinearForm<T>, j: &AntilinearStructure<T>) -> Result<BilinearForm<T>> {
    if j.sign() != StructureSign::Quaternionic {
        return Err(Error::Usage("symplectic form needs a quaternionic structure".into()));
    }
    if h.dim() != j.dim() {
        return Err(Error::DimensionMismatch("structure and product act on different spaces".into()));
    }
    BilinearForm::new(h.gram() * &j.matrix().conj(), Symmetry::Antisymmetric)
}

/// The antisymmetric form `ω̂` on `Λ³C⁶` with Gram entries the 3×3 minors of
/// the Gram matrix of `ω`. Built independently of `J⁽³⁾`; `Ĥ(ξ, J⁽³⁾η) = ω̂(ξ, η)`.
pub fn alternating_cube<T: Real>(omega: &BilinearForm<T>) -> Result<BilinearForm<T>> {
    check_six(omega.gram(), "Gram matrix of omega")?;
    if omega.symmetry() != Symmetry::Antisymmetric {
        return Err(Error::Usage("alternating_cube needs an antisymmetric form".into()));
    }
    BilinearForm::new(third_compound(omega.gram()), Symmetry::Antisymmetric)
}

/// The 6×20 matrix of `κ(v1∧v2∧v3) = ω(v1,v2) v3 + ω(v2,v3) v1 + ω(v3,v1) v2`.
pub fn contraction_matrix<T: Real>(omega: &BilinearForm<T>) -> Result<ComplexMatrix<T>> {
    check_six(omega.gram(), "Gram matrix of omega")?;
    if omega.symmetry() != Symmetry::Antisymmetric {
        return Err(Error::Usage("contraction needs an antisymmetric form".into()));
    }
    let w = omega.gram();
    let mut k = ComplexMatrix::zeros(BASE_DIM, CUBE_DIM);
    for (c, t) in TRIPLES.iter().enumerate() {
        let [a, b, d] = t.zero_based();
        k[(d, c)] = k[(d, c)] + w[(a, b)];
        k[(a, c)] = k[(a, c)] + w[(b, d)];
        k[(b, c)] = k[(b, c)] + w[(d, a)];
    }
    Ok(k)
}

pub fn contraction<T: Real>(omega: &BilinearForm<T>, xi: &Trivector<T>) -> Result<ComplexVector<T>> {
    Ok(contraction_matrix(omega)?.mul_vec(xi.coeffs()))
}

/// Rank data of `κ`.
#[derive(Clone, Debug)]
pub struct KernelReport<T> {
    pub rank: usize,
    pub margin: T,
    pub basis: ComplexMatrix<T>,
}

/// `V₁ = ker κ`, `Ĥ`-orthonormal. Fails unless `κ` has rank 6.
pub fn kernel_v1<T: Real>(omega: &BilinearForm<T>, h20: &SesquilinearForm<T>) -> Result<KernelReport<T>> {
    let kappa = contraction_matrix(omega)?;
    let ns = nullspace(&kappa, T::rank_rtol());
    if ns.rank != BASE_DIM {
        return Err(Error::Inconsistent(format!("contraction has numerical rank {}, expected 6", ns.rank)));
    }
    let cols = orthonormalize(h20, &ns.basis.columns(), T::rank_rtol())?;
    Ok(KernelReport { rank: ns.rank, margin: ns.margin, basis: ComplexMatrix::from_columns(CUBE_DIM, &cols) })
}

/// `V₂ = V₁^⊥` with respect to `Ĥ`, `Ĥ`-orthonormal.
pub fn complement_v2<T: Real>(omega: &BilinearForm<T>, h20: &SesquilinearForm<T>) -> Result<ComplexMatrix<T>> {
    let v1 = kernel_v1(omega, h20)?.basis;
    // H(x, b) = x^T G conj(b) = 0 for all b in V₁.
    let cond = (h20.gram() * &v1.conj()).transpose();
    let ns = nullspace(&cond, T::rank_rtol());
    if ns.nullity() != CUBE_DIM - v1.cols() {
        return Err(Error::Inconsistent(format!("orthogonal complement has dimension {}", ns.nullity())));
    }
    let cols = orthonormalize(h20, &ns.basis.columns(), T::rank_rtol())?;
    Ok(ComplexMatrix::from_columns(CUBE_DIM, &cols))
}

/// Everything the quaternionic construction needs, built once from `(H, J)` on `C⁶`.
#[derive(Clone, Debug)]
pub struct ExteriorCube<T: Real> {
    pub h6: SesquilinearForm<T>,
    pub j6: AntilinearStructure<T>,
    pub omega: BilinearForm<T>,
    pub h20: SesquilinearForm<T>,
    pub j3: AntilinearStructure<T>,
    pub omega_hat: BilinearForm<T>,
    pub kappa: ComplexMatrix<T>,
    pub kappa_rank: usize,
    pub kappa_margin: T,
    /// `Ĥ`-orthonormal, J-adapted basis of `V₁` in the order `b₁..b₇, J b₁..J b₇`.
    pub v1: ComplexMatrix<T>,
    /// `Ĥ`-orthonormal basis of `V₂`.
    pub v2: ComplexMatrix<T>,
}

impl<T: Real> ExteriorCube<T> {
    /// Standard product on `C⁶` with `J e_i = e_{i+3}`.
    pub fn standard() -> Result<Self> {
        Self::new(SesquilinearForm::standard(BASE_DIM), AntilinearStructure::standard_quaternionic(3))
    }

    pub fn new(h6: SesquilinearForm<T>, j6: AntilinearStructure<T>) -> Result<Self> {
        let omega = symplectic_form(&h6, &j6)?;
        let h20 = hermitian_product_cube(&h6)?;
        let j3m = induced_map3(j6.matrix(), true)?.matrix;
        let j3 = AntilinearStructure::new(j3m, StructureSign::Quaternionic, &h20, T::identity_tol())?;
        let omega_hat = alternating_cube(&omega)?;
        let kappa = contraction_matrix(&omega)?;
        let ker = kernel_v1(&omega, &h20)?;
        let pairs = quaternionic_orthonormalize(&h20, &j3, &ker.basis.columns(), T::rank_rtol())?;
        if 2 * pairs.len() != ker.basis.cols() {
            return Err(Error::Structure(format!(
                "kernel of the contraction is not J-invariant ({} pairs for dimension {})",
                pairs.len(),
                ker.basis.cols()
            )));
        }
        let blocked: Vec<ComplexVector<T>> = pairs.iter().map(|p| p.0.clone()).chain(pairs.iter().map(|p| p.1.clone())).collect();
        let v1 = ComplexMatrix::from_columns(CUBE_DIM, &blocked);
        let v2 = complement_v2(&omega, &h20)?;
        Ok(Self { h6, j6, omega, h20, j3, omega_hat, kappa, kappa_rank: ker.rank, kappa_margin: ker.margin, v1, v2 })
    }

    pub fn j_vector(&self, i: usize) -> ComplexVector<T> {
        self.j6.apply(&ComplexVector::basis(BASE_DIM, i))
    }

    pub fn apply_j3(&self, xi: &Trivector<T>) -> Trivector<T> {
        Trivector { coeffs: self.j3.apply(xi.coeffs()) }
    }

    /// `e_i` (0-based).
    pub fn e(i: usize) -> ComplexVector<T> {
        ComplexVector::basis(BASE_DIM, i)
    }

    /// The seven vectors spanning `V₁` over the quaternions.
    pub fn seven_spanning_vectors(&self) -> Vec<Trivector<T>> {
        let e = Self::e;
        let j = |i: usize| self.j_vector(i);
        let w = |a: &ComplexVector<T>, b: &ComplexVector<T>, c: &ComplexVector<T>| wedge3(a, b, c).expect("vectors have dimension 6");
        vec![
            w(&e(0), &e(1), &e(2)),
            w(&j(0), &e(1), &e(2)),
            w(&e(0), &j(1), &e(2)),
            w(&e(0), &e(1), &j(2)),
            w(&e(0), &e(1), &j(1)).sub(&w(&e(0), &e(2), &j(2))),
            self.xi1(),
            self.xi2(),
        ]
    }

    /// `ξ₁ = e₂∧e₁∧Je₁ − e₂∧e₃∧Je₃`.
    pub fn xi1(&self) -> Trivector<T> {
        let e = Self::e;
        let a = wedge3(&e(1), &e(0), &self.j_vector(0)).expect("dimension 6");
        let b = wedge3(&e(1), &e(2), &self.j_vector(2)).expect("dimension 6");
        a.sub(&b)
    }

    /// `ξ₂ = e₃∧e₁∧Je₁ − e₃∧e₂∧Je₂`.
    pub fn xi2(&self) -> Trivector<T> {
        let e = Self::e;
        let a = wedge3(&e(2), &e(0), &self.j_vector(0)).expect("dimension 6");
        let b = wedge3(&e(2), &e(1), &self.j_vector(1)).expect("dimension 6");
        a.sub(&b)
    }

    /// Coordinates of a vector of `Λ³C⁶` lying in `V₁` with respect to `v1`.
    pub fn v1_coordinates(&self, xi: &ComplexVector<T>) -> ComplexVector<T> {
        // v1 is Ĥ-orthonormal: coordinate i is Ĥ(xi, b_i).
        ComplexVector::from_fn(self.v1.cols(), |i| self.h20.eval(xi, &self.v1.column(i)).expect("dimension 20"))
    }
}

impl<T: Real> Default for Trivector<T> {
    fn default() -> Self {
        Self::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> ComplexVector<f64> {
        ComplexVector::basis(6, i)
    }

    #[test]
    fn triple_table_is_lexicographic() {
        assert_eq!(TRIPLES[0], TripleIndex::new(1, 2, 3).unwrap());
        assert_eq!(TRIPLES[19], TripleIndex::new(4, 5, 6).unwrap());
        assert!(TRIPLES.windows(2).all(|w| w[0] < w[1]));
        assert!(TripleIndex::new(2, 2, 3).is_err());
        assert_eq!(TripleIndex::new(1, 2, 4).unwrap().to_string(), "(1,2,4)");
    }

    #[test]
    fn wedge_sign_for_e2_e1_e4() {
        let t = wedge3(&e(1), &e(0), &e(3)).unwrap();
        let idx = TripleIndex::new(1, 2, 4).unwrap();
        assert_eq!(t.coeff(idx), Complex::new(-1.0, 0.0));
        assert!(wedge3(&e(0), &e(0), &e(1)).unwrap().coeffs().norm() == 0.0);
        assert_eq!(Trivector::<f64>::basis_wedge(1, 0, 3), t);
    }

    #[test]
    fn j3_squares_to_minus_identity() {
        let cube = ExteriorCube::<f64>::standard().unwrap();
        let m = cube.j3.matrix();
        let sq = m * &m.conj();
        assert!(sq.distance(&ComplexMatrix::identity(20).scale_real(-1.0)) < 1e-14);
    }

    #[test]
    fn kernel_dimensions() {
        let cube = ExteriorCube::<f64>::standard().unwrap();
        assert_eq!(cube.kappa_rank, 6);
        assert_eq!(cube.v1.cols(), 14);
        assert_eq!(cube.v2.cols(), 6);
        let cross = &cube.v1.adjoint() * &cube.v2;
        assert!(cross.max_abs() < 1e-12);
    }

    #[test]
    fn derivation_matches_single_slot_expansion() {
        let y = ComplexMatrix::from_fn(6, 6, |i, j| Complex::new((i * 7 + j) as f64 * 0.1, (i as f64) - (j as f64)));
        let d = derivation3(&y).unwrap();
        let (a, b, c) = (e(0), e(2), e(5));
        let xi = wedge3(&a, &b, &c).unwrap();
        let lhs = d.mul_vec(xi.coeffs());
        let rhs = wedge3(&y.mul_vec(&a), &b, &c)
            .unwrap()
            .add(&wedge3(&a, &y.mul_vec(&b), &c).unwrap())
            .add(&wedge3(&a, &b, &y.mul_vec(&c)).unwrap());
        assert!(lhs.distance(rhs.coeffs()) < 1e-13);
    }

    #[test]
    fn v1_is_j_adapted() {
        let cube = ExteriorCube::<f64>::standard().unwrap();
        let restricted = &cube.v1.adjoint() * &cube.j3.apply_columns(&cube.v1);
        let jm = crate::linalg::standard_j_matrix::<f64>(7);
        assert!(restricted.distance(&jm) < 1e-12);
    }
}
