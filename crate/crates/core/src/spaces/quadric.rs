//! The complex quadric `Q(V, β) = {[z] : β(z, z) = 0}`.

use num_complex::Complex;

use super::splitting::CartanSplitting;
use crate::error::{Error, Result};
use crate::linalg::{
    expm, re_im_split, real_span_basis, structure_from_forms, AntilinearStructure, BilinearForm, ComplexMatrix, ComplexVector,
    SesquilinearForm,
};
use crate::scalar::{lit, to_f64, Real};

/// `Q(V, β)` for a Hermitian product `H` and a compatible symmetric form `β`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexQuadric<T> {
    h: SesquilinearForm<T>,
    beta: BilinearForm<T>,
    real: AntilinearStructure<T>,
}

impl<T: Real> ComplexQuadric<T> {
    pub fn new(h: SesquilinearForm<T>, beta: BilinearForm<T>) -> Result<Self> {
        let real = structure_from_forms(&h, &beta)?;
        Ok(Self { h, beta, real })
    }

    /// `H` and `β` both standard on `C^n`.
    pub fn standard(n: usize) -> Self {
        Self { h: SesquilinearForm::standard(n), beta: BilinearForm::standard_symmetric(n), real: AntilinearStructure::conjugation(n) }
    }

    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    pub fn hermitian(&self) -> &SesquilinearForm<T> {
        &self.h
    }

    pub fn bilinear(&self) -> &BilinearForm<T> {
        &self.beta
    }

    pub fn real_structure(&self) -> &AntilinearStructure<T> {
        &self.real
    }

    /// `H`-orthonormal basis of the real form `V_R = {v : A v = v}`, starting
    /// with the given real vectors.
    fn real_basis(&self, first: &[ComplexVector<T>]) -> Result<Vec<ComplexVector<T>>> {
        let n = self.dim();
        let mut candidates: Vec<ComplexVector<T>> = first.to_vec();
        for i in 0..n {
            let (x, y) = re_im_split(&self.real, &ComplexVector::basis(n, i))?;
            candidates.push(x);
            candidates.push(y);
        }
        // On V_R the product H is real, so real Gram-Schmidt against H is plain
        // Gram-Schmidt of real combinations.
        let mut out: Vec<ComplexVector<T>> = Vec::new();
        for v in candidates {
            let n0 = self.h.norm(&v)?;
            if n0 == T::zero() {
                continue;
            }
            let mut w = v;
            for _ in 0..2 {
                for u in &out {
                    let coef = self.h.eval(&w, u)?.re;
                    w = w.axpy(Complex::new(-coef, T::zero()), u);
                }
            }
            let n1 = self.h.norm(&w)?;
            if n1 > lit::<T>(1e-8) * n0 {
                out.push(w.scale_real(n1.recip()));
            }
            if out.len() == n {
                break;
            }
        }
        Ok(out)
    }

    /// The operator `v ↦ r H(v, s) − s H(v, r)`, a skew map of `V_R`.
    fn rotation(&self, r: &ComplexVector<T>, s: &ComplexVector<T>) -> ComplexMatrix<T> {
        let g = self.h.gram();
        let gs = g.mul_vec(&s.conj());
        let gr = g.mul_vec(&r.conj());
        let n = self.dim();
        ComplexMatrix::from_fn(n, n, |i, j| r[i] * gs[j] - s[i] * gr[j])
    }
}

/// A point `[z]` of the quadric, stored as `z` with `H(z, z) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadricPoint<T> {
    z: ComplexVector<T>,
}

impl<T: Real> QuadricPoint<T> {
    /// Scales `z` to unit length and checks `β(z, z) = 0`.
    pub fn new(quadric: &ComplexQuadric<T>, z: ComplexVector<T>) -> Result<Self> {
        if z.len() != quadric.dim() {
            return Err(Error::DimensionMismatch(format!("expected a vector of length {}", quadric.dim())));
        }
        let n = quadric.h.norm(&z)?;
        if n == T::zero() || !n.is_finite() {
            return Err(Error::Normalization("zero vector".into()));
        }
        let z = z.scale_real(n.recip());
        let b = quadric.beta.eval(&z, &z)?.norm();
        if b > lit(1e-12) {
            return Err(Error::Normalization(format!("β(z, z) = {:e} after normalization", to_f64(b))));
        }
        Ok(Self { z })
    }

    pub fn z(&self) -> &ComplexVector<T> {
        &self.z
    }

    /// `(|H(z,z) − 1|, |β(z,z)|)`.
    pub fn residuals(&self, quadric: &ComplexQuadric<T>) -> Result<(T, T)> {
        let h = (quadric.h.eval(&self.z, &self.z)? - Complex::new(T::one(), T::zero())).norm();
        Ok((h, quadric.beta.eval(&self.z, &self.z)?.norm()))
    }

    /// `RE(z)` and `IM(z)` with respect to the real structure.
    pub fn re_im(&self, quadric: &ComplexQuadric<T>) -> Result<(ComplexVector<T>, ComplexVector<T>)> {
        re_im_split(&quadric.real, &self.z)
    }

    /// `g z` for a linear map preserving `H` and `β`.
    pub fn transform(&self, quadric: &ComplexQuadric<T>, g: &ComplexMatrix<T>) -> Result<Self> {
        if g.shape() != (quadric.dim(), quadric.dim()) {
            return Err(Error::DimensionMismatch("transformation does not act on the quadric".into()));
        }
        Self::new(quadric, g.mul_vec(&self.z))
    }

    /// `|| z z^H − w w^H ||` (Frobenius), independent of the representatives.
    pub fn distance(&self, other: &Self) -> T {
        let n = self.z.len();
        let mut acc = T::zero();
        for i in 0..n {
            for j in 0..n {
                let d = self.z[i] * self.z[j].conj() - other.z[i] * other.z[j].conj();
                acc = acc + d.norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// `W₁ = span_R{√2 RE z, √2 IM z}` and its orthogonal complement `W₂` in
    /// `V_R`, as `H`-orthonormal real vectors.
    pub fn real_splitting(&self, quadric: &ComplexQuadric<T>) -> Result<(Vec<ComplexVector<T>>, Vec<ComplexVector<T>>)> {
        let (x, y) = self.re_im(quadric)?;
        let s = lit::<T>(std::f64::consts::SQRT_2);
        let (x, y) = (x.scale_real(s), y.scale_real(s));
        let tol = lit::<T>(1e-10);
        let h = &quadric.h;
        if (h.eval(&x, &x)?.re - T::one()).abs() > tol || (h.eval(&y, &y)?.re - T::one()).abs() > tol || h.eval(&x, &y)?.norm() > tol {
            return Err(Error::Normalization("RE(z), IM(z) are not orthogonal of equal norm".into()));
        }
        let mut basis = quadric.real_basis(&[x, y])?;
        let w2 = basis.split_off(2);
        Ok((basis, w2))
    }

    /// Tangent vector `X z − H(X z, z) z` of an ambient algebra element.
    pub fn tangent_from_algebra(&self, quadric: &ComplexQuadric<T>, x: &ComplexMatrix<T>) -> Result<ComplexVector<T>> {
        if x.shape() != (quadric.dim(), quadric.dim()) {
            return Err(Error::DimensionMismatch("algebra element does not act on the quadric".into()));
        }
        let xz = x.mul_vec(&self.z);
        let c = quadric.h.eval(&xz, &self.z)?;
        Ok(xz.axpy(-c, &self.z))
    }

    /// `exp(t D) z` for `D` in `m̃`.
    pub fn geodesic(
        &self,
        quadric: &ComplexQuadric<T>,
        splitting: &CartanSplitting<T>,
        direction: &ComplexMatrix<T>,
        t: T,
        tol: T,
    ) -> Result<Self> {
        check_transvection(splitting, direction, tol)?;
        let g = expm(&direction.scale_real(t))?;
        Self::new(quadric, g.mul_vec(&self.z))
    }
}

pub(crate) fn check_transvection<T: Real>(splitting: &CartanSplitting<T>, direction: &ComplexMatrix<T>, tol: T) -> Result<()> {
    let k = splitting.k_ratio(direction);
    let out = splitting.outside_ratio(direction);
    if k > tol || out > tol {
        return Err(Error::NotTransvection(to_f64(k.max(out))));
    }
    Ok(())
}

/// `k̃ ⊕ m̃` of `so(V_R)` at `z`: `k̃` preserves `W₁` and `W₂`, `m̃` exchanges them.
pub fn quadric_splitting<T: Real>(quadric: &ComplexQuadric<T>, point: &QuadricPoint<T>) -> Result<CartanSplitting<T>> {
    let (w1, w2) = point.real_splitting(quadric)?;
    let mut k = Vec::new();
    let mut m = Vec::new();
    for block in [&w1, &w2] {
        for (i, r) in block.iter().enumerate() {
            for s in block.iter().skip(i + 1) {
                k.push(quadric.rotation(r, s));
            }
        }
    }
    for r in &w1 {
        for s in &w2 {
            m.push(quadric.rotation(r, s));
        }
    }
    let rtol = lit::<T>(1e-8);
    CartanSplitting::new(real_span_basis(&k, rtol), real_span_basis(&m, rtol))
}

/// `φ = ½ arccos(|β(w, w)| / H(w, w))` for a tangent vector `w` at `point`.
pub fn characteristic_angle_quadric<T: Real>(quadric: &ComplexQuadric<T>, point: &QuadricPoint<T>, w: &ComplexVector<T>) -> Result<T> {
    if w.len() != quadric.dim() {
        return Err(Error::DimensionMismatch("tangent vector does not match the quadric".into()));
    }
    let hw = quadric.h.eval(w, w)?.re;
    if !(hw > T::zero()) {
        return Err(Error::UndefinedAngle("zero tangent vector".into()));
    }
    let norm = hw.sqrt();
    let off = quadric.h.eval(w, point.z())?.norm().max(quadric.beta.eval(w, point.z())?.norm());
    if off > lit::<T>(1e-8) * norm {
        return Err(Error::InvalidInput(format!("vector is not tangent at the point (residual {:e})", to_f64(off / norm))));
    }
    let ratio = (quadric.beta.eval(w, w)?.norm() / hw).min(T::one());
    let quarter = lit::<T>(std::f64::consts::FRAC_PI_4);
    Ok((ratio.acos() / lit(2.0)).max(T::zero()).min(quarter))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z0() -> QuadricPoint<f64> {
        let q = ComplexQuadric::standard(3);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        QuadricPoint::new(&q, ComplexVector::new(vec![Complex::new(s, 0.0), Complex::new(0.0, s), Complex::new(0.0, 0.0)]).unwrap())
            .unwrap()
    }

    #[test]
    fn non_isotropic_vector_is_rejected() {
        let q = ComplexQuadric::<f64>::standard(3);
        let e = ComplexVector::basis(3, 0);
        assert!(matches!(QuadricPoint::new(&q, e), Err(Error::Normalization(_))));
        assert!(QuadricPoint::new(&q, ComplexVector::zeros(3)).is_err());
    }

    #[test]
    fn splitting_dimensions_in_c3() {
        let q = ComplexQuadric::standard(3);
        let s = quadric_splitting(&q, &z0()).unwrap();
        // so(3) = so(2) + m with dim m = 2.
        assert_eq!((s.k_dim(), s.m_dim()), (1, 2));
        let r = s.residuals();
        assert!(r.brackets < 1e-12 && r.orthogonality < 1e-12);
    }

    #[test]
    fn angles_at_extremes() {
        let q = ComplexQuadric::standard(3);
        let p = z0();
        let real = ComplexVector::basis(3, 2);
        assert!(characteristic_angle_quadric(&q, &p, &real).unwrap().abs() < 1e-15);
        assert!(matches!(characteristic_angle_quadric(&q, &p, &ComplexVector::zeros(3)), Err(Error::UndefinedAngle(_))));
        assert!(characteristic_angle_quadric(&q, &p, p.z()).is_err());
    }

    #[test]
    fn geodesic_rejects_isotropy_direction() {
        let q = ComplexQuadric::standard(3);
        let p = z0();
        let s = quadric_splitting(&q, &p).unwrap();
        let k = s.k_basis[0].clone();
        assert!(matches!(p.geodesic(&q, &s, &k, 0.3, 1e-9), Err(Error::NotTransvection(_))));
        let m = s.m_basis[0].clone();
        let p1 = p.geodesic(&q, &s, &m, 0.0, 1e-9).unwrap();
        assert!(p1.distance(&p) < 1e-15);
        let (h, b) = p.geodesic(&q, &s, &m, 0.7, 1e-9).unwrap().residuals(&q).unwrap();
        assert!(h < 1e-14 && b < 1e-14);
    }

    #[test]
    fn isotropy_has_zero_tangent() {
        let q = ComplexQuadric::standard(3);
        let p = z0();
        let s = quadric_splitting(&q, &p).unwrap();
        // k̃ rotates RE z into IM z, i.e. multiplies z by a phase.
        let t = p.tangent_from_algebra(&q, &s.k_basis[0]).unwrap();
        assert!(t.norm() < 1e-15);
    }
}
