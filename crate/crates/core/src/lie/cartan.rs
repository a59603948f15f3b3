//! The Cartan representations of SO(3) and SU(3) on symmetric 3×3 matrices,
//! and the Sp(3)-representations on `Λ³C⁶` and on `V₁ = ker κ`.
//!
//! Symmetric matrices are handled in coordinates of a real basis that is
//! orthonormal for `H(X, Y) = tr(X conj(Y))`. In these coordinates `H` and
//! `β(X, Y) = tr(X Y)` both have identity Gram matrix and the real structure
//! `X ↦ conj(X)` is plain conjugation of coordinates.

use std::sync::Arc;

use num_complex::Complex;

use super::group::MatrixLieGroup;
use super::rep::{MatrixMap, Representation};
use crate::error::{Error, Result};
use crate::exterior::{derivation3, induced_map3, ExteriorCube};
use crate::linalg::{structure_from_forms, BilinearForm, ComplexMatrix, ComplexVector, SesquilinearForm, Symmetry};
use crate::scalar::{lit, Real};

/// A real, `H`-orthonormal basis of a space of complex symmetric 3×3 matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricMatrixSpace<T> {
    basis: Vec<ComplexMatrix<T>>,
}

fn sym<T: Real>(i: usize, j: usize) -> ComplexMatrix<T> {
    let s = lit::<T>(std::f64::consts::FRAC_1_SQRT_2);
    let mut m = ComplexMatrix::zeros(3, 3);
    m[(i, j)] = Complex::new(s, T::zero());
    m[(j, i)] = Complex::new(s, T::zero());
    m
}

fn diag<T: Real>(d: [f64; 3]) -> ComplexMatrix<T> {
    ComplexMatrix::from_diag(&d.map(|x| Complex::new(lit(x), T::zero())))
}

impl<T: Real> SymmetricMatrixSpace<T> {
    /// Trace-free symmetric matrices, basis
    /// `(E12+E21)/√2, (E13+E31)/√2, (E23+E32)/√2, diag(1,-1,0)/√2, diag(1,1,-2)/√6`.
    pub fn trace_free() -> Self {
        let r2 = std::f64::consts::FRAC_1_SQRT_2;
        let r6 = 1.0 / 6f64.sqrt();
        Self { basis: vec![sym(0, 1), sym(0, 2), sym(1, 2), diag([r2, -r2, 0.0]), diag([r6, r6, -2.0 * r6])] }
    }

    /// All symmetric matrices, basis `E11, (E12+E21)/√2, (E13+E31)/√2, E22,
    /// (E23+E32)/√2, E33` (row-major upper triangle).
    pub fn all() -> Self {
        Self { basis: vec![diag([1.0, 0.0, 0.0]), sym(0, 1), sym(0, 2), diag([0.0, 1.0, 0.0]), sym(1, 2), diag([0.0, 0.0, 1.0])] }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ComplexMatrix<T>] {
        &self.basis
    }

    /// Coordinates `c_i = H(X, b_i) = tr(X b_i)`.
    pub fn to_coords(&self, x: &ComplexMatrix<T>) -> Result<ComplexVector<T>> {
        if x.shape() != (3, 3) {
            return Err(Error::DimensionMismatch("expected a 3x3 matrix".into()));
        }
        Ok(ComplexVector::from_fn(self.dim(), |i| (x * &self.basis[i]).trace()))
    }

    pub fn from_coords(&self, c: &ComplexVector<T>) -> Result<ComplexMatrix<T>> {
        if c.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!("expected {} coordinates", self.dim())));
        }
        Ok(self.basis.iter().enumerate().fold(ComplexMatrix::zeros(3, 3), |acc, (i, b)| &acc + &b.scale(c[i])))
    }

    /// Matrix of the linear map `X ↦ f(X)` in these coordinates.
    pub fn operator(&self, f: impl Fn(&ComplexMatrix<T>) -> ComplexMatrix<T>) -> ComplexMatrix<T> {
        let d = self.dim();
        let images: Vec<ComplexMatrix<T>> = self.basis.iter().map(&f).collect();
        ComplexMatrix::from_fn(d, d, |i, j| (&images[j] * &self.basis[i]).trace())
    }

    /// `9 × d` matrix whose columns are the row-major flattenings of the basis.
    pub fn embedding(&self) -> ComplexMatrix<T> {
        ComplexMatrix::from_columns(9, &self.basis.iter().map(|b| b.flatten()).collect::<Vec<_>>())
    }

    /// Gram matrix of both `tr(X conj Y)` and `tr(X Y)` on flattened 3×3
    /// matrices: the permutation matrix of transposition.
    pub fn flat_gram() -> ComplexMatrix<T> {
        ComplexMatrix::from_fn(9, 9, |p, q| {
            let (i, j) = (p / 3, p % 3);
            if q == j * 3 + i {
                Complex::new(T::one(), T::zero())
            } else {
                Complex::new(T::zero(), T::zero())
            }
        })
    }

    /// `H` restricted from the flattened 9-dimensional space.
    pub fn hermitian(&self) -> Result<SesquilinearForm<T>> {
        let e = self.embedding();
        SesquilinearForm::new(&(&e.transpose() * &Self::flat_gram()) * &e.conj())
    }

    /// `β` restricted from the flattened 9-dimensional space.
    pub fn bilinear(&self) -> Result<BilinearForm<T>> {
        let e = self.embedding();
        BilinearForm::new(&(&e.transpose() * &Self::flat_gram()) * &e, Symmetry::Symmetric)
    }
}

/// SO(3) on trace-free symmetric matrices: `B ↦ (X ↦ B X B⁻¹)`,
/// `Y ↦ (X ↦ YX − XY)`. Preserves `H`, `β` and the real structure.
pub fn cartan_so3<T: Real>() -> Result<Representation<T>> {
    let space = SymmetricMatrixSpace::<T>::trace_free();
    let h = space.hermitian()?;
    let b = space.bilinear()?;
    let a = structure_from_forms(&h, &b)?;
    let (s1, s2) = (space.clone(), space);
    let gm: MatrixMap<T> = Arc::new(move |g| s1.operator(|x| &(g * x) * &g.transpose()));
    let am: MatrixMap<T> = Arc::new(move |y| s2.operator(|x| &(y * x) - &(x * y)));
    Representation::new("cartan_so3", MatrixLieGroup::so(3), 5, gm, am).with_hermitian(h)?.with_bilinear(b)?.with_structure(a)
}

/// SU(3) on all symmetric matrices: `B ↦ (X ↦ B X Bᵗ)`, `Y ↦ (X ↦ YX + XYᵗ)`.
/// Preserves `H` only.
pub fn cartan_su3<T: Real>() -> Result<Representation<T>> {
    let space = SymmetricMatrixSpace::<T>::all();
    let h = space.hermitian()?;
    let (s1, s2) = (space.clone(), space);
    let gm: MatrixMap<T> = Arc::new(move |g| s1.operator(|x| &(g * x) * &g.transpose()));
    let am: MatrixMap<T> = Arc::new(move |y| s2.operator(|x| &(y * x) + &(x * &y.transpose())));
    Representation::new("cartan_su3", MatrixLieGroup::su(3), 6, gm, am).with_hermitian(h)
}

/// Sp(3) on all of `Λ³C⁶` via `B ↦ B⁽³⁾`; preserves `Ĥ` and `J⁽³⁾`.
pub fn sp3_on_cube<T: Real>(cube: &ExteriorCube<T>) -> Result<Representation<T>> {
    let gm: MatrixMap<T> = Arc::new(|g| induced_map3(g, false).expect("Sp(3) acts by 6x6 matrices").matrix);
    let am: MatrixMap<T> = Arc::new(|y| derivation3(y).expect("sp(3) acts by 6x6 matrices"));
    Representation::new("sp3_cube", MatrixLieGroup::sp(3), 20, gm, am).with_hermitian(cube.h20.clone())?.with_structure(cube.j3.clone())
}

/// Sp(3) on the 14-dimensional `V₁ = ker κ`, in the J-adapted basis of
/// [`ExteriorCube::v1`].
pub fn sp3_fundamental_v1<T: Real>(cube: &ExteriorCube<T>) -> Result<Representation<T>> {
    let full = sp3_on_cube(cube)?;
    super::rep::subrepresentation(&full, &cube.v1, lit(1e-9)).map(|r| r.renamed("sp3_v1"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::seeded_rng;

    #[test]
    fn coordinate_forms_are_identity() {
        for s in [SymmetricMatrixSpace::<f64>::trace_free(), SymmetricMatrixSpace::all()] {
            let d = s.dim();
            assert!(s.hermitian().unwrap().gram().distance(&ComplexMatrix::identity(d)) < 1e-15);
            assert!(s.bilinear().unwrap().gram().distance(&ComplexMatrix::identity(d)) < 1e-15);
        }
    }

    #[test]
    fn coordinates_roundtrip() {
        let s = SymmetricMatrixSpace::<f64>::all();
        let x = ComplexMatrix::from_fn(3, 3, |i, j| Complex::new((i + j) as f64, (i * j) as f64));
        assert!(s.from_coords(&s.to_coords(&x).unwrap()).unwrap().distance(&x) < 1e-14);
    }

    #[test]
    fn cartan_representations_pass_axioms() {
        let mut rng = seeded_rng(11);
        let so3 = cartan_so3::<f64>().unwrap();
        let su3 = cartan_su3::<f64>().unwrap();
        let c = so3.check(20, &mut rng);
        assert!(c.max() < 1e-9, "{c:?}");
        assert!(c.bilinear.is_some() && c.structure.is_some());
        assert!(su3.check(20, &mut rng).max() < 1e-9);
        let id = ComplexMatrix::identity(3);
        assert!(so3.group_image(&id).unwrap().distance(&ComplexMatrix::identity(5)) < 1e-15);
        assert!(su3.group_image(&id).unwrap().distance(&ComplexMatrix::identity(6)) < 1e-15);
    }

    #[test]
    fn v1_representation() {
        let cube = ExteriorCube::<f64>::standard().unwrap();
        let rep = sp3_fundamental_v1(&cube).unwrap();
        assert_eq!(rep.dim(), 14);
        assert!(rep.group_image(&ComplexMatrix::identity(6)).unwrap().distance(&ComplexMatrix::identity(14)) < 1e-13);
        let mut rng = seeded_rng(12);
        let c = rep.check(5, &mut rng);
        assert!(c.max() < 1e-9, "{c:?}");
        assert!(c.structure.is_some());
    }
}
