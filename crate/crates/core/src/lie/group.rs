//! The compact matrix groups SO(n), SU(n) and Sp(n) with fixed algebra bases.

use num_complex::Complex;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::random::gaussian_reals;
use crate::linalg::{determinant, expm, solve, standard_j_matrix, ComplexMatrix};
use crate::scalar::{lit, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// Real orthogonal matrices of determinant one.
    SpecialOrthogonal,
    /// Unitary matrices of determinant one.
    SpecialUnitary,
    /// Unitary matrices commuting with `J = [[0, -I], [I, 0]]` (antilinearly).
    CompactSymplectic,
}

/// A matrix Lie group with a real-spanning basis of its Lie algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixLieGroup<T> {
    name: String,
    kind: GroupKind,
    rank_n: usize,
    basis: Vec<ComplexMatrix<T>>,
}

fn unit<T: Real>(n: usize, i: usize, j: usize) -> ComplexMatrix<T> {
    let mut m = ComplexMatrix::zeros(n, n);
    m[(i, j)] = Complex::new(T::one(), T::zero());
    m
}

fn i_unit<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::one())
}

/// `E_ij - E_ji` for `i < j`, lexicographic.
fn so_basis<T: Real>(n: usize) -> Vec<ComplexMatrix<T>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            out.push(&unit(n, i, j) - &unit(n, j, i));
        }
    }
    out
}

/// For `i < j`: `E_ij - E_ji`, `i (E_ij + E_ji)`; then `i (E_kk - E_{k+1,k+1})`.
fn su_basis<T: Real>(n: usize) -> Vec<ComplexMatrix<T>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            out.push(&unit(n, i, j) - &unit(n, j, i));
            out.push((&unit(n, i, j) + &unit(n, j, i)).scale(i_unit()));
        }
    }
    for k in 0..n.saturating_sub(1) {
        out.push((&unit(n, k, k) - &unit(n, k + 1, k + 1)).scale(i_unit()));
    }
    out
}

/// `[[P, Q], [-conj Q, conj P]]` with `P` in `u(n)` and `Q` symmetric. Order:
/// the `su(n)` basis for `P`, then `P = i I`, then for `i <= j` the pair
/// `Q = S_ij`, `Q = i S_ij` where `S_ij = E_ij + E_ji` (`S_ii = E_ii`).
fn sp_basis<T: Real>(n: usize) -> Vec<ComplexMatrix<T>> {
    let z = ComplexMatrix::zeros(n, n);
    let block = |p: &ComplexMatrix<T>, q: &ComplexMatrix<T>| ComplexMatrix::block2(p, q, &(-&q.conj()), &p.conj());
    let mut out: Vec<ComplexMatrix<T>> = su_basis(n).iter().map(|p| block(p, &z)).collect();
    out.push(block(&ComplexMatrix::identity(n).scale(i_unit()), &z));
    for i in 0..n {
        for j in i..n {
            let s = if i == j { unit(n, i, i) } else { &unit(n, i, j) + &unit(n, j, i) };
            out.push(block(&z, &s));
            out.push(block(&z, &s.scale(i_unit())));
        }
    }
    out
}

impl<T: Real> MatrixLieGroup<T> {
    pub fn so(n: usize) -> Self {
        Self { name: format!("SO({n})"), kind: GroupKind::SpecialOrthogonal, rank_n: n, basis: so_basis(n) }
    }

    pub fn su(n: usize) -> Self {
        Self { name: format!("SU({n})"), kind: GroupKind::SpecialUnitary, rank_n: n, basis: su_basis(n) }
    }

    /// `Sp(n)` acting on `C^{2n}`.
    pub fn sp(n: usize) -> Self {
        Self { name: format!("Sp({n})"), kind: GroupKind::CompactSymplectic, rank_n: n, basis: sp_basis(n) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    /// Size of the defining matrices.
    pub fn matrix_size(&self) -> usize {
        match self.kind {
            GroupKind::CompactSymplectic => 2 * self.rank_n,
            _ => self.rank_n,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ComplexMatrix<T>] {
        &self.basis
    }

    fn check_shape(&self, x: &ComplexMatrix<T>) -> Result<()> {
        let n = self.matrix_size();
        if x.shape() != (n, n) {
            return Err(Error::DimensionMismatch(format!("{} acts by {n}x{n} matrices, got {:?}", self.name, x.shape())));
        }
        Ok(())
    }

    /// Violation of the defining relations of the Lie algebra.
    pub fn algebra_residual(&self, x: &ComplexMatrix<T>) -> Result<T> {
        self.check_shape(x)?;
        let skew = (x + &x.adjoint()).frobenius_norm();
        Ok(match self.kind {
            GroupKind::SpecialOrthogonal => skew + x.map(|z| Complex::new(T::zero(), z.im)).frobenius_norm(),
            GroupKind::SpecialUnitary => skew + x.trace().norm(),
            GroupKind::CompactSymplectic => {
                let j = standard_j_matrix(self.rank_n);
                skew + (&(x * &j) - &(&j * &x.conj())).frobenius_norm()
            }
        })
    }

    /// Violation of the defining relations of the group.
    pub fn group_residual(&self, g: &ComplexMatrix<T>) -> Result<T> {
        self.check_shape(g)?;
        let n = g.rows();
        let unitary = (&g.adjoint() * g).distance(&ComplexMatrix::identity(n));
        Ok(match self.kind {
            GroupKind::SpecialOrthogonal => {
                let det = determinant(g)?;
                unitary + g.map(|z| Complex::new(T::zero(), z.im)).frobenius_norm() + (det - Complex::new(T::one(), T::zero())).norm()
            }
            GroupKind::SpecialUnitary => unitary + (determinant(g)? - Complex::new(T::one(), T::zero())).norm(),
            GroupKind::CompactSymplectic => {
                let j = standard_j_matrix(self.rank_n);
                unitary + (&(g * &j) - &(&j * &g.conj())).frobenius_norm()
            }
        })
    }

    /// `sum c_i X_i`.
    pub fn combination(&self, coeffs: &[T]) -> Result<ComplexMatrix<T>> {
        if coeffs.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!("{} has dimension {}, got {} coefficients", self.name, self.dim(), coeffs.len())));
        }
        let n = self.matrix_size();
        Ok(self.basis.iter().zip(coeffs).fold(ComplexMatrix::zeros(n, n), |acc, (x, &c)| &acc + &x.scale_real(c)))
    }

    /// Real coordinates of an algebra element in the fixed basis, via the
    /// Gram system of `Re tr(A^H B)`.
    pub fn coordinates(&self, x: &ComplexMatrix<T>) -> Result<Vec<T>> {
        self.check_shape(x)?;
        let d = self.dim();
        let gram = ComplexMatrix::from_fn(d, d, |i, j| Complex::new(self.basis[i].inner_re(&self.basis[j]), T::zero()));
        let rhs = ComplexMatrix::from_fn(d, 1, |i, _| Complex::new(self.basis[i].inner_re(x), T::zero()));
        let sol = solve(&gram, &rhs)?;
        Ok((0..d).map(|i| sol[(i, 0)].re).collect())
    }

    /// Algebra element with Gaussian coordinates, scaled to Frobenius norm `norm`.
    pub fn random_algebra_element(&self, norm: T, rng: &mut (impl Rng + ?Sized)) -> ComplexMatrix<T> {
        let c = gaussian_reals::<T>(self.dim(), rng);
        let x = self.combination(&c).expect("coefficient count matches the basis");
        let f = x.frobenius_norm();
        x.scale_real(norm / f)
    }

    pub fn exp(&self, x: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
        let r = self.algebra_residual(x)?;
        let scale = x.frobenius_norm().max(T::one());
        if r > T::identity_tol() * scale {
            return Err(Error::InvalidInput(format!("matrix is not in the Lie algebra of {} (residual {r:e})", self.name)));
        }
        expm(x)
    }

    /// `exp` of a random algebra element of norm up to `pi`.
    pub fn random_element(&self, rng: &mut (impl Rng + ?Sized)) -> ComplexMatrix<T> {
        let r: f64 = rng.random_range(0.1..std::f64::consts::PI);
        let x = self.random_algebra_element(lit(r), rng);
        expm(&x).expect("exponential of a finite matrix")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rank, seeded_rng};

    #[test]
    fn dimensions() {
        assert_eq!(MatrixLieGroup::<f64>::so(3).dim(), 3);
        assert_eq!(MatrixLieGroup::<f64>::su(3).dim(), 8);
        assert_eq!(MatrixLieGroup::<f64>::sp(3).dim(), 21);
        assert_eq!(MatrixLieGroup::<f64>::su(6).dim(), 35);
        assert_eq!(MatrixLieGroup::<f64>::sp(7).dim(), 105);
    }

    #[test]
    fn bases_satisfy_relations_and_are_independent() {
        for g in [MatrixLieGroup::<f64>::so(3), MatrixLieGroup::su(3), MatrixLieGroup::sp(3)] {
            for x in g.basis() {
                assert!(g.algebra_residual(x).unwrap() < 1e-12, "{}", g.name());
            }
            let n = g.matrix_size();
            let cols: Vec<_> = g.basis().iter().map(|x| x.flatten()).collect();
            let m = crate::linalg::ComplexMatrix::from_columns(n * n, &cols);
            // Real independence: stack real and imaginary parts.
            let stacked = ComplexMatrix::from_fn(2 * n * n, g.dim(), |i, j| {
                let z = m[(i % (n * n), j)];
                Complex::new(if i < n * n { z.re } else { z.im }, 0.0)
            });
            assert_eq!(rank(&stacked, 1e-9), g.dim());
        }
    }

    #[test]
    fn so3_generators_include_x1_x2() {
        let g = MatrixLieGroup::<f64>::so(3);
        let x1 = ComplexMatrix::from_real_rows(&[&[0.0, 1.0, 0.0], &[-1.0, 0.0, 0.0], &[0.0, 0.0, 0.0]]);
        let x2 = ComplexMatrix::from_real_rows(&[&[0.0, 0.0, 1.0], &[0.0, 0.0, 0.0], &[-1.0, 0.0, 0.0]]);
        assert_eq!(g.basis()[0], x1);
        assert_eq!(g.basis()[1], x2);
    }

    #[test]
    fn exponentials_land_in_the_group() {
        let mut rng = seeded_rng(3);
        for g in [MatrixLieGroup::<f64>::so(3), MatrixLieGroup::su(3), MatrixLieGroup::sp(3)] {
            for _ in 0..5 {
                let b = g.random_element(&mut rng);
                assert!(g.group_residual(&b).unwrap() < 1e-11, "{}", g.name());
            }
        }
    }

    #[test]
    fn coordinates_roundtrip() {
        let mut rng = seeded_rng(5);
        let g = MatrixLieGroup::<f64>::sp(3);
        let c = gaussian_reals::<f64>(21, &mut rng);
        let x = g.combination(&c).unwrap();
        let back = g.coordinates(&x).unwrap();
        assert!(c.iter().zip(&back).all(|(a, b)| (a - b).abs() < 1e-12));
    }
}
