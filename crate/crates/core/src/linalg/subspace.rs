//! Orthonormal bases, projections and subspace comparisons.

use num_complex::Complex;

use super::forms::{AntilinearStructure, SesquilinearForm, StructureSign};
use super::matrix::ComplexMatrix;
use super::vector::ComplexVector;
use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Gram-Schmidt (two passes) against `form`; vectors whose residual falls
/// below `rtol` times their original norm are dropped.
pub fn orthonormalize<T: Real>(form: &SesquilinearForm<T>, vectors: &[ComplexVector<T>], rtol: T) -> Result<Vec<ComplexVector<T>>> {
    let mut out: Vec<ComplexVector<T>> = Vec::new();
    for v in vectors {
        if let Some(u) = orthonormal_residual(form, &out, v, rtol)? {
            out.push(u);
        }
    }
    Ok(out)
}

fn orthonormal_residual<T: Real>(
    form: &SesquilinearForm<T>,
    basis: &[ComplexVector<T>],
    v: &ComplexVector<T>,
    rtol: T,
) -> Result<Option<ComplexVector<T>>> {
    let n0 = form.norm(v)?;
    if n0 == T::zero() {
        return Ok(None);
    }
    let mut w = v.clone();
    for _ in 0..2 {
        for u in basis {
            let coef = form.eval(&w, u)?;
            w = w.axpy(-coef, u);
        }
    }
    let n1 = form.norm(&w)?;
    if n1 <= rtol * n0 {
        return Ok(None);
    }
    Ok(Some(w.scale_real(n1.recip())))
}

/// J-adapted orthonormalization for a quaternionic structure: returns pairs
/// `(b, J b)` spanning the smallest J-invariant subspace containing `vectors`.
pub fn quaternionic_orthonormalize<T: Real>(
    form: &SesquilinearForm<T>,
    structure: &AntilinearStructure<T>,
    vectors: &[ComplexVector<T>],
    rtol: T,
) -> Result<Vec<(ComplexVector<T>, ComplexVector<T>)>> {
    if structure.sign() != StructureSign::Quaternionic {
        return Err(Error::Usage("quaternionic orthonormalization needs J^2 = -id".into()));
    }
    let mut flat: Vec<ComplexVector<T>> = Vec::new();
    let mut pairs = Vec::new();
    for v in vectors {
        if let Some(b) = orthonormal_residual(form, &flat, v, rtol)? {
            // The span of earlier pairs is J-invariant and J is an isometry with
            // H(b, Jb) = 0, so Jb is already orthonormal to everything.
            let jb = structure.apply(&b);
            flat.push(b.clone());
            flat.push(jb.clone());
            pairs.push((b, jb));
        }
    }
    Ok(pairs)
}

/// Orthogonal projection of `v` onto the span of `spanning` (with respect to `form`).
pub fn project_onto_span<T: Real>(
    form: &SesquilinearForm<T>,
    spanning: &[ComplexVector<T>],
    v: &ComplexVector<T>,
    rtol: T,
) -> Result<ComplexVector<T>> {
    let basis = orthonormalize(form, spanning, rtol)?;
    let mut p = ComplexVector::zeros(v.len());
    for u in &basis {
        p = p.axpy(form.eval(v, u)?, u);
    }
    Ok(p)
}

/// `B B^H` for a basis with orthonormal columns (standard product).
pub fn projector<T: Real>(basis: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    basis * &basis.adjoint()
}

/// Orthonormal completion of the column span of `basis` to `C^n`, standard product.
pub fn orthonormal_complement<T: Real>(basis: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let n = basis.rows();
    let h = SesquilinearForm::standard(n);
    let mut current: Vec<ComplexVector<T>> = basis.columns();
    let mut extra = Vec::new();
    for i in 0..n {
        if current.len() == n {
            break;
        }
        let e = ComplexVector::basis(n, i);
        if let Ok(Some(u)) = orthonormal_residual(&h, &current, &e, crate::scalar::lit(1e-6)) {
            current.push(u.clone());
            extra.push(u);
        }
    }
    ComplexMatrix::from_columns(n, &extra)
}

/// Frobenius distance between the orthogonal projectors of two column spans.
pub fn subspace_distance<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> T {
    projector(a).distance(&projector(b))
}

/// `|| (I - B B^H) X B ||`: failure of the span of `basis` to be `X`-invariant.
pub fn invariance_residual<T: Real>(basis: &ComplexMatrix<T>, x: &ComplexMatrix<T>) -> T {
    let xb = x * basis;
    let back = basis * &(&basis.adjoint() * &xb);
    (&xb - &back).frobenius_norm()
}

/// Gram-Schmidt over the reals for matrices, inner product `Re tr(A^H B)`.
/// Residuals at rounding level relative to the largest input are dropped too.
pub fn real_orthonormalize<T: Real>(mats: &[ComplexMatrix<T>], rtol: T) -> Vec<ComplexMatrix<T>> {
    let scale = mats.iter().fold(T::zero(), |m, x| m.max(x.frobenius_norm()));
    let floor = T::epsilon() * lit(1e3) * scale;
    let mut out: Vec<ComplexMatrix<T>> = Vec::new();
    for m in mats {
        let n0 = m.frobenius_norm();
        if n0 == T::zero() {
            continue;
        }
        let mut w = m.clone();
        for _ in 0..2 {
            for u in &out {
                let coef = u.inner_re(&w);
                w = &w - &u.scale_real(coef);
            }
        }
        let n1 = w.frobenius_norm();
        if n1 > rtol * n0 && n1 > floor {
            out.push(w.scale_real(n1.recip()));
        }
    }
    out
}

/// Orthonormal basis of the real span, with the dimension fixed by the
/// singular values of the stacked real coordinates (cutoff `rtol * s_max`).
/// Directions are then chosen by pivoted Gram-Schmidt, largest residual first.
pub fn real_span_basis<T: Real>(mats: &[ComplexMatrix<T>], rtol: T) -> Vec<ComplexMatrix<T>> {
    if mats.is_empty() {
        return Vec::new();
    }
    let len = 2 * mats[0].rows() * mats[0].cols();
    let cols: Vec<ComplexVector<T>> = mats.iter().map(|m| ComplexVector::from_real(&m.to_real_stacked())).collect();
    let s = super::decomp::singular_values(&ComplexMatrix::from_columns(len, &cols));
    let smax = s.first().copied().unwrap_or(T::zero());
    let rank = s.iter().filter(|&&x| x > rtol * smax && x > T::zero()).count();
    let mut residuals: Vec<ComplexMatrix<T>> = mats.to_vec();
    let mut out: Vec<ComplexMatrix<T>> = Vec::with_capacity(rank);
    while out.len() < rank {
        let (idx, norm) = residuals.iter().enumerate().map(|(i, r)| (i, r.frobenius_norm())).fold((0, T::zero()), |best, cur| {
            if cur.1 > best.1 {
                cur
            } else {
                best
            }
        });
        if norm == T::zero() {
            break;
        }
        let mut u = residuals[idx].scale_real(norm.recip());
        for v in &out {
            let coef = v.inner_re(&u);
            u = &u - &v.scale_real(coef);
        }
        let u = u.scale_real(u.frobenius_norm().recip());
        for r in residuals.iter_mut() {
            let coef = u.inner_re(r);
            *r = &*r - &u.scale_real(coef);
        }
        out.push(u);
    }
    out
}

/// Orthogonal projection of `x` onto the real span of an orthonormal family.
pub fn real_projection<T: Real>(basis: &[ComplexMatrix<T>], x: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let mut p = ComplexMatrix::zeros(x.rows(), x.cols());
    for u in basis {
        p = &p + &u.scale(Complex::new(u.inner_re(x), T::zero()));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::{gaussian_matrix, gaussian_vector, seeded_rng};

    #[test]
    fn gram_schmidt_drops_dependent_vectors() {
        let mut rng = seeded_rng(4);
        let a = gaussian_vector::<f64>(5, &mut rng);
        let b = gaussian_vector::<f64>(5, &mut rng);
        let c = a.axpy(Complex::new(2.0, -1.0), &b);
        let h = SesquilinearForm::standard(5);
        let q = orthonormalize(&h, &[a, b, c], 1e-9).unwrap();
        assert_eq!(q.len(), 2);
        assert!(h.eval(&q[0], &q[1]).unwrap().norm() < 1e-14);
    }

    #[test]
    fn span_basis_uses_singular_value_rank() {
        let mut rng = seeded_rng(5);
        let a = gaussian_matrix::<f64>(3, 3, &mut rng);
        let b = gaussian_matrix::<f64>(3, 3, &mut rng);
        // A tiny input that lies in the span up to rounding must not add a direction.
        let tiny = (&a.scale_real(1e-9) + &b.scale_real(2e-9)).scale_real(1.0 + 1e-15);
        let q = real_span_basis(&[a.clone(), tiny, b.clone(), &a + &b], 1e-8);
        assert_eq!(q.len(), 2);
        assert!(q[0].inner_re(&q[1]).abs() < 1e-14);
        assert!((&b - &real_projection(&q, &b)).frobenius_norm() < 1e-13);
    }

    #[test]
    fn quaternionic_pairs_are_orthonormal() {
        let mut rng = seeded_rng(8);
        let j = AntilinearStructure::<f64>::standard_quaternionic(3);
        let h = SesquilinearForm::standard(6);
        let vs: Vec<_> = (0..4).map(|_| gaussian_vector(6, &mut rng)).collect();
        let pairs = quaternionic_orthonormalize(&h, &j, &vs, 1e-9).unwrap();
        assert_eq!(pairs.len(), 3);
        let flat: Vec<_> = pairs.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
        let m = ComplexMatrix::from_columns(6, &flat);
        assert!((&m.adjoint() * &m).distance(&ComplexMatrix::identity(6)) < 1e-13);
    }

    #[test]
    fn complement_and_projection() {
        let mut rng = seeded_rng(10);
        let g = gaussian_matrix::<f64>(6, 2, &mut rng);
        let h = SesquilinearForm::standard(6);
        let q = ComplexMatrix::from_columns(6, &orthonormalize(&h, &g.columns(), 1e-9).unwrap());
        let c = orthonormal_complement(&q);
        assert_eq!(c.cols(), 4);
        let full = ComplexMatrix::hstack(&[&q, &c]);
        assert!((&full.adjoint() * &full).distance(&ComplexMatrix::identity(6)) < 1e-13);
        let v = gaussian_vector(6, &mut rng);
        let p = project_onto_span(&h, &g.columns(), &v, 1e-9).unwrap();
        assert!(p.distance(&projector(&q).mul_vec(&v)) < 1e-13);
    }
}
