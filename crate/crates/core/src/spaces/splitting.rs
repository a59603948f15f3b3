//! Splittings `g̃ = k̃ ⊕ m̃` of an ambient transvection algebra at a base point.

use crate::error::{Error, Result};
use crate::linalg::{real_projection, real_span_basis, ComplexMatrix};
use crate::scalar::{lit, Real};

/// Real-orthonormal bases (for `Re tr(A^H B)`) of `k̃` and `m̃`.
#[derive(Clone, Debug)]
pub struct CartanSplitting<T> {
    pub k_basis: Vec<ComplexMatrix<T>>,
    pub m_basis: Vec<ComplexMatrix<T>>,
}

/// Residuals of the symmetric-pair relations.
#[derive(Clone, Debug, PartialEq)]
pub struct SplittingResiduals<T> {
    /// `[k̃, k̃] ⊂ k̃`, `[k̃, m̃] ⊂ m̃`, `[m̃, m̃] ⊂ k̃`: largest off-target part of a
    /// bracket of basis elements.
    pub brackets: T,
    /// Largest `|<k_i, m_j>|`.
    pub orthogonality: T,
}

impl<T: Real> CartanSplitting<T> {
    pub fn new(k_basis: Vec<ComplexMatrix<T>>, m_basis: Vec<ComplexMatrix<T>>) -> Result<Self> {
        let shape = k_basis.first().or(m_basis.first()).map(|m| m.shape());
        if shape.is_none() || k_basis.iter().chain(&m_basis).any(|m| Some(m.shape()) != shape) {
            return Err(Error::DimensionMismatch("splitting bases must be non-empty with equal shapes".into()));
        }
        Ok(Self { k_basis, m_basis })
    }

    /// Splits the real span of `ambient` by a projection pair, orthonormalizing
    /// each part.
    pub fn from_projections(
        ambient: &[ComplexMatrix<T>],
        k_part: impl Fn(&ComplexMatrix<T>) -> ComplexMatrix<T>,
        m_part: impl Fn(&ComplexMatrix<T>) -> ComplexMatrix<T>,
    ) -> Result<Self> {
        let rtol = lit::<T>(1e-8);
        let k: Vec<_> = ambient.iter().map(&k_part).collect();
        let m: Vec<_> = ambient.iter().map(&m_part).collect();
        Self::new(real_span_basis(&k, rtol), real_span_basis(&m, rtol))
    }

    pub fn k_dim(&self) -> usize {
        self.k_basis.len()
    }

    pub fn m_dim(&self) -> usize {
        self.m_basis.len()
    }

    pub fn project_k(&self, x: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        real_projection(&self.k_basis, x)
    }

    pub fn project_m(&self, x: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        real_projection(&self.m_basis, x)
    }

    /// `|| proj_k̃ x || / || x ||` (zero for `x = 0`).
    pub fn k_ratio(&self, x: &ComplexMatrix<T>) -> T {
        let n = x.frobenius_norm();
        if n == T::zero() {
            return T::zero();
        }
        self.project_k(x).frobenius_norm() / n
    }

    /// `|| x - proj_k̃ x - proj_m̃ x || / || x ||`: part of `x` outside the ambient algebra.
    pub fn outside_ratio(&self, x: &ComplexMatrix<T>) -> T {
        let n = x.frobenius_norm();
        if n == T::zero() {
            return T::zero();
        }
        (&(x - &self.project_k(x)) - &self.project_m(x)).frobenius_norm() / n
    }

    pub fn residuals(&self) -> SplittingResiduals<T> {
        let mut brackets = T::zero();
        let check = |a: &ComplexMatrix<T>, b: &ComplexMatrix<T>, into_k: bool| {
            let c = a.commutator(b);
            let wrong = if into_k { self.project_m(&c) } else { self.project_k(&c) };
            let outside = &(&c - &self.project_k(&c)) - &self.project_m(&c);
            wrong.frobenius_norm() + outside.frobenius_norm()
        };
        for (i, a) in self.k_basis.iter().enumerate() {
            for b in self.k_basis.iter().skip(i + 1) {
                brackets = brackets.max(check(a, b, true));
            }
            for b in &self.m_basis {
                brackets = brackets.max(check(a, b, false));
            }
        }
        for (i, a) in self.m_basis.iter().enumerate() {
            for b in self.m_basis.iter().skip(i + 1) {
                brackets = brackets.max(check(a, b, true));
            }
        }
        let mut orthogonality = T::zero();
        for a in &self.k_basis {
            for b in &self.m_basis {
                orthogonality = orthogonality.max(a.inner_re(b).abs());
            }
        }
        SplittingResiduals { brackets, orthogonality }
    }
}
