//! Dense factorizations used throughout the crate.
//!
//! Singular values come from one-sided (Hestenes) Jacobi iterations, which
//! resolve tiny singular values to high relative accuracy; that is what the
//! rank decisions downstream rely on. Tall inputs are first reduced to a square
//! triangular factor by Householder QR.

use num_complex::Complex;
use num_traits::{One, Zero};

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

const MAX_SWEEPS: usize = 80;

/// Upper-triangular factor `R` (n x n) of a Householder QR of a tall `m x n` matrix.
pub fn qr_r_factor<T: Real>(a: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let (m, n) = a.shape();
    assert!(m >= n, "qr_r_factor expects a tall matrix");
    // Column-major working copy; Householder updates touch columns.
    let mut cols: Vec<Vec<Complex<T>>> = (0..n).map(|j| (0..m).map(|i| a[(i, j)]).collect()).collect();
    for k in 0..n {
        let norm: T = cols[k][k..].iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if norm == T::zero() {
            continue;
        }
        let x0 = cols[k][k];
        let phase = if x0.norm() > T::zero() { x0 / x0.norm() } else { Complex::one() };
        let alpha = -phase * norm;
        let mut v: Vec<Complex<T>> = cols[k][k..].to_vec();
        v[0] = v[0] - alpha;
        let vnorm_sqr: T = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm_sqr == T::zero() {
            continue;
        }
        let two = lit::<T>(2.0);
        for col in cols.iter_mut().skip(k) {
            let proj = v.iter().zip(&col[k..]).fold(Complex::zero(), |acc, (vi, ci)| acc + vi.conj() * ci);
            let f = proj * two / vnorm_sqr;
            for (ci, vi) in col[k..].iter_mut().zip(&v) {
                *ci = *ci - vi * f;
            }
        }
    }
    ComplexMatrix::from_fn(n, n, |i, j| if i <= j { cols[j][i] } else { Complex::zero() })
}

/// Singular values (descending) and right singular vectors (columns of `v`).
#[derive(Clone, Debug)]
pub struct Svd<T> {
    pub singular_values: Vec<T>,
    pub v: ComplexMatrix<T>,
}

/// Singular value decomposition `A = U S V^H`, returning `S` and the full
/// `n x n` unitary `V`.
pub fn svd<T: Real>(a: &ComplexMatrix<T>) -> Svd<T> {
    let (m, n) = a.shape();
    if n == 0 {
        return Svd { singular_values: vec![], v: ComplexMatrix::zeros(0, 0) };
    }
    let work = if m > n {
        qr_r_factor(a)
    } else if m < n {
        // Zero rows do not change the right singular structure.
        ComplexMatrix::vstack(&[a, &ComplexMatrix::zeros(n - m, n)])
    } else {
        a.clone()
    };
    one_sided_jacobi(&work)
}

fn one_sided_jacobi<T: Real>(a: &ComplexMatrix<T>) -> Svd<T> {
    let (m, n) = a.shape();
    let mut w: Vec<Vec<Complex<T>>> = (0..n).map(|j| (0..m).map(|i| a[(i, j)]).collect()).collect();
    let mut v: Vec<Vec<Complex<T>>> =
        (0..n).map(|j| (0..n).map(|i| if i == j { Complex::one() } else { Complex::zero() }).collect()).collect();
    let eps = T::epsilon();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha: T = w[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: T = w[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma = w[p].iter().zip(&w[q]).fold(Complex::zero(), |acc, (x, y)| acc + x.conj() * y);
                let g = gamma.norm();
                if g == T::zero() || g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let (cs, sn, ph) = jacobi_angles(alpha, beta, gamma);
                rotate_pair(&mut w, p, q, cs, sn, ph);
                rotate_pair(&mut v, p, q, cs, sn, ph);
            }
        }
        if !rotated {
            break;
        }
    }
    let mut order: Vec<(T, usize)> = w.iter().enumerate().map(|(j, col)| (col.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt(), j)).collect();
    order.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap_or(std::cmp::Ordering::Equal));
    let singular_values = order.iter().map(|&(s, _)| s).collect();
    let vm = ComplexMatrix::from_fn(n, n, |i, j| v[order[j].1][i]);
    Svd { singular_values, v: vm }
}

/// Rotation `G = diag(1, e^{-i phi}) [[c, s], [-s, c]]` diagonalizing the
/// Hermitian 2x2 matrix `[[alpha, gamma], [conj(gamma), beta]]`.
fn jacobi_angles<T: Real>(alpha: T, beta: T, gamma: Complex<T>) -> (T, T, Complex<T>) {
    let g = gamma.norm();
    let phase = gamma / g; // e^{i phi}
    let zeta = (beta - alpha) / (lit::<T>(2.0) * g);
    let sign = if zeta >= T::zero() { T::one() } else { -T::one() };
    let t = sign / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
    let cs = (T::one() + t * t).sqrt().recip();
    (cs, cs * t, phase.conj())
}

fn rotate_pair<T: Real>(cols: &mut [Vec<Complex<T>>], p: usize, q: usize, cs: T, sn: T, ph: Complex<T>) {
    let (left, right) = cols.split_at_mut(q);
    let cp = &mut left[p];
    let cq = &mut right[0];
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let xp = *x;
        let yq = *y * ph;
        *x = xp * cs - yq * sn;
        *y = xp * sn + yq * cs;
    }
}

/// Singular values in descending order.
pub fn singular_values<T: Real>(a: &ComplexMatrix<T>) -> Vec<T> {
    let (m, n) = a.shape();
    if m < n {
        svd(&a.adjoint()).singular_values
    } else {
        svd(a).singular_values
    }
}

/// Numerical nullspace with its rank diagnostics.
#[derive(Clone, Debug)]
pub struct Nullspace<T> {
    /// Orthonormal basis of the kernel, one column per null direction.
    pub basis: ComplexMatrix<T>,
    pub singular_values: Vec<T>,
    pub rank: usize,
    /// Smallest kept singular value over the largest discarded one. The
    /// discarded side is floored at `eps * s_max` so the value stays finite.
    pub margin: T,
}

impl<T: Real> Nullspace<T> {
    pub fn nullity(&self) -> usize {
        self.basis.cols()
    }
}

/// Kernel of `a`: singular values below `rtol * s_max` count as zero.
pub fn nullspace<T: Real>(a: &ComplexMatrix<T>, rtol: T) -> Nullspace<T> {
    let n = a.cols();
    let Svd { singular_values, v } = svd(a);
    let smax = singular_values.first().copied().unwrap_or(T::zero());
    let rank = singular_values.iter().filter(|&&s| s > rtol * smax && s > T::zero()).count();
    let floor = T::epsilon() * smax.max(T::min_positive_value());
    let kept_min = if rank > 0 { singular_values[rank - 1] } else { floor };
    let dropped_max = singular_values.get(rank).copied().unwrap_or(T::zero()).max(floor);
    let margin = kept_min / dropped_max;
    let idx: Vec<usize> = (rank..n).collect();
    Nullspace { basis: v.select_columns(&idx), singular_values, rank, margin }
}

/// Numerical rank with the same threshold convention as [`nullspace`].
pub fn rank<T: Real>(a: &ComplexMatrix<T>, rtol: T) -> usize {
    let s = singular_values(a);
    let smax = s.first().copied().unwrap_or(T::zero());
    s.iter().filter(|&&x| x > rtol * smax && x > T::zero()).count()
}

/// 2-norm condition number `s_max / s_min` of a square matrix.
pub fn condition_number<T: Real>(a: &ComplexMatrix<T>) -> T {
    let s = singular_values(a);
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) if lo > T::zero() => hi / lo,
        _ => T::infinity(),
    }
}

/// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// Eigenvalues ascend; eigenvectors are the matching columns.
pub fn hermitian_eigen<T: Real>(a: &ComplexMatrix<T>) -> Result<(Vec<T>, ComplexMatrix<T>)> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("hermitian_eigen needs a square matrix".into()));
    }
    let n = a.rows();
    let scale = a.frobenius_norm().max(T::min_positive_value());
    if a.distance(&a.adjoint()) > lit::<T>(1e3) * T::epsilon() * scale {
        return Err(Error::InvalidInput("matrix is not Hermitian".into()));
    }
    let mut m = a.clone();
    let mut v = ComplexMatrix::identity(n);
    let eps = T::epsilon();
    for _ in 0..MAX_SWEEPS {
        let off: T = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).map(|(i, j)| m[(i, j)].norm_sqr()).sum();
        if off.sqrt() <= eps * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let gamma = m[(p, q)];
                if gamma.norm() <= eps * eps * scale {
                    continue;
                }
                let (cs, sn, ph) = jacobi_angles(m[(p, p)].re, m[(q, q)].re, gamma);
                // columns: M <- M G
                for i in 0..n {
                    let x = m[(i, p)];
                    let y = m[(i, q)] * ph;
                    m[(i, p)] = x * cs - y * sn;
                    m[(i, q)] = x * sn + y * cs;
                    let x = v[(i, p)];
                    let y = v[(i, q)] * ph;
                    v[(i, p)] = x * cs - y * sn;
                    v[(i, q)] = x * sn + y * cs;
                }
                // rows: M <- G^H M
                let phc = ph.conj();
                for j in 0..n {
                    let x = m[(p, j)];
                    let y = m[(q, j)] * phc;
                    m[(p, j)] = x * cs - y * sn;
                    m[(q, j)] = x * sn + y * cs;
                }
                m[(p, q)] = Complex::zero();
                m[(q, p)] = Complex::zero();
            }
        }
    }
    let mut order: Vec<(T, usize)> = (0..n).map(|i| (m[(i, i)].re, i)).collect();
    order.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&(l, _)| l).collect();
    let idx: Vec<usize> = order.iter().map(|&(_, i)| i).collect();
    Ok((values, v.select_columns(&idx)))
}

/// Solves `A X = B` by LU with partial pivoting.
pub fn solve<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    if !a.is_square() || a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!("solve: {:?} against {:?}", a.shape(), b.shape())));
    }
    let n = a.rows();
    let mut lu = a.clone();
    let mut x = b.clone();
    let scale = a.max_abs();
    for k in 0..n {
        let piv =
            (k..n).max_by(|&i, &j| lu[(i, k)].norm().partial_cmp(&lu[(j, k)].norm()).unwrap_or(std::cmp::Ordering::Equal)).unwrap_or(k);
        if lu[(piv, k)].norm() <= T::epsilon() * scale {
            return Err(Error::InvalidInput("solve: matrix is singular to working precision".into()));
        }
        if piv != k {
            for j in 0..n {
                let t = lu[(k, j)];
                lu[(k, j)] = lu[(piv, j)];
                lu[(piv, j)] = t;
            }
            for j in 0..x.cols() {
                let t = x[(k, j)];
                x[(k, j)] = x[(piv, j)];
                x[(piv, j)] = t;
            }
        }
        let d = lu[(k, k)];
        for i in (k + 1)..n {
            let f = lu[(i, k)] / d;
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let t = lu[(k, j)];
                lu[(i, j)] = lu[(i, j)] - f * t;
            }
            for j in 0..x.cols() {
                let t = x[(k, j)];
                x[(i, j)] = x[(i, j)] - f * t;
            }
        }
    }
    for j in 0..x.cols() {
        for i in (0..n).rev() {
            let mut s = x[(i, j)];
            for k in (i + 1)..n {
                s = s - lu[(i, k)] * x[(k, j)];
            }
            x[(i, j)] = s / lu[(i, i)];
        }
    }
    Ok(x)
}

/// Determinant by LU with partial pivoting.
pub fn determinant<T: Real>(a: &ComplexMatrix<T>) -> Result<Complex<T>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("determinant needs a square matrix".into()));
    }
    let n = a.rows();
    let mut lu = a.clone();
    let mut det = Complex::one();
    for k in 0..n {
        let piv =
            (k..n).max_by(|&i, &j| lu[(i, k)].norm().partial_cmp(&lu[(j, k)].norm()).unwrap_or(std::cmp::Ordering::Equal)).unwrap_or(k);
        if lu[(piv, k)].is_zero() {
            return Ok(Complex::zero());
        }
        if piv != k {
            for j in 0..n {
                let t = lu[(k, j)];
                lu[(k, j)] = lu[(piv, j)];
                lu[(piv, j)] = t;
            }
            det = -det;
        }
        let d = lu[(k, k)];
        det = det * d;
        for i in (k + 1)..n {
            let f = lu[(i, k)] / d;
            for j in k..n {
                let t = lu[(k, j)];
                lu[(i, j)] = lu[(i, j)] - f * t;
            }
        }
    }
    Ok(det)
}

pub fn inverse<T: Real>(a: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    solve(a, &ComplexMatrix::identity(a.rows()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::{gaussian_matrix, seeded_rng};

    #[test]
    fn determinant_of_permuted_diagonal() {
        let a = ComplexMatrix::<f64>::from_real_rows(&[&[0.0, 2.0, 0.0], &[3.0, 0.0, 0.0], &[0.0, 0.0, 5.0]]);
        let d = determinant(&a).unwrap();
        assert!((d - Complex::new(-30.0, 0.0)).norm() < 1e-13);
        assert_eq!(determinant(&ComplexMatrix::<f64>::zeros(2, 2)).unwrap(), Complex::zero());
    }

    #[test]
    fn svd_reconstructs_singular_values_of_diagonal() {
        let d = ComplexMatrix::<f64>::from_diag(&[Complex::new(3.0, 0.0), Complex::new(0.0, -5.0), Complex::new(1.0, 0.0)]);
        let s = singular_values(&d);
        assert!((s[0] - 5.0).abs() < 1e-14 && (s[1] - 3.0).abs() < 1e-14 && (s[2] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn svd_right_vectors_are_unitary_and_diagonalize() {
        let mut rng = seeded_rng(3);
        let a = gaussian_matrix::<f64>(9, 5, &mut rng);
        let Svd { singular_values, v } = svd(&a);
        assert!((&v.adjoint() * &v).distance(&ComplexMatrix::identity(5)) < 1e-12);
        let av = &a * &v;
        for (j, s) in singular_values.iter().enumerate() {
            assert!((av.column(j).norm() - s).abs() < 1e-12);
        }
        // Wide input goes through zero padding.
        let s_wide = singular_values_of_adjoint(&a);
        for (x, y) in s_wide.iter().zip(&singular_values) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    fn singular_values_of_adjoint(a: &ComplexMatrix<f64>) -> Vec<f64> {
        svd(&a.adjoint()).singular_values.into_iter().take(a.cols()).collect()
    }

    #[test]
    fn nullspace_of_rank_deficient_product() {
        let mut rng = seeded_rng(11);
        let a = &gaussian_matrix::<f64>(8, 3, &mut rng) * &gaussian_matrix::<f64>(3, 7, &mut rng);
        let ns = nullspace(&a, 1e-9);
        assert_eq!(ns.rank, 3);
        assert_eq!(ns.nullity(), 4);
        assert!(ns.margin > 1e3);
        assert!((&a * &ns.basis).max_abs() < 1e-12);
    }

    #[test]
    fn hermitian_eigen_matches_construction() {
        let mut rng = seeded_rng(5);
        let g = gaussian_matrix::<f64>(6, 6, &mut rng);
        let h = &g + &g.adjoint();
        let (vals, vecs) = hermitian_eigen(&h).unwrap();
        let recon = &(&vecs * &ComplexMatrix::from_diag(&vals.iter().map(|&l| Complex::new(l, 0.0)).collect::<Vec<_>>())) * &vecs.adjoint();
        assert!(recon.distance(&h) < 1e-12);
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        assert!(hermitian_eigen(&g).is_err());
    }

    #[test]
    fn solve_and_inverse() {
        let mut rng = seeded_rng(7);
        let a = gaussian_matrix::<f64>(5, 5, &mut rng);
        let inv = inverse(&a).unwrap();
        assert!((&a * &inv).distance(&ComplexMatrix::identity(5)) < 1e-11);
        assert!(inverse(&ComplexMatrix::<f64>::zeros(3, 3)).is_err());
    }

    #[test]
    fn f32_svd_is_usable() {
        let mut rng = seeded_rng(1);
        let a = &gaussian_matrix::<f32>(6, 2, &mut rng) * &gaussian_matrix::<f32>(2, 4, &mut rng);
        let ns = nullspace(&a, f32::rank_rtol());
        assert_eq!(ns.rank, 2);
        assert!((&a * &ns.basis).max_abs() < 1e-4);
    }
}
