//! Commutants, intertwiners and invariant-subspace decompositions.

use num_complex::Complex;
use rand::SeedableRng;

use super::rep::Representation;
use crate::error::{Error, Result};
use crate::linalg::decomp::qr_r_factor;
use crate::linalg::random::{complex_gaussian, SeededRng};
use crate::linalg::{condition_number, hermitian_eigen, invariance_residual, nullspace, rank, ComplexMatrix};
use crate::scalar::{lit, Real};

/// Basis of the solution space of a linear matrix equation, with the rank
/// margin of the underlying system.
#[derive(Clone, Debug)]
pub struct SolutionSpace<T> {
    pub basis: Vec<ComplexMatrix<T>>,
    pub margin: T,
}

impl<T> SolutionSpace<T> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Nullspace of a tall stacked system, compressed by QR first.
fn stacked_nullspace<T: Real>(blocks: &[ComplexMatrix<T>], cols: usize, rtol: T) -> (ComplexMatrix<T>, T) {
    let refs: Vec<&ComplexMatrix<T>> = blocks.iter().collect();
    let sys = ComplexMatrix::vstack(&refs);
    let reduced = if sys.rows() > cols { qr_r_factor(&sys) } else { sys };
    let ns = nullspace(&reduced, rtol);
    debug_assert_eq!(ns.basis.rows(), cols);
    (ns.basis, ns.margin)
}

/// All `T` (`n2 × n1`) with `T a_i = b_i T`, from the full Kronecker system.
pub fn intertwiner_space_dense<T: Real>(a: &[ComplexMatrix<T>], b: &[ComplexMatrix<T>], rtol: T) -> Result<SolutionSpace<T>> {
    check_generators(a, b)?;
    let n1 = a[0].rows();
    let n2 = b[0].rows();
    let i1 = ComplexMatrix::identity(n1);
    let i2 = ComplexMatrix::identity(n2);
    // vec(T A) = (A^T ⊗ I) vec T and vec(B T) = (I ⊗ B) vec T, column-major.
    let blocks: Vec<ComplexMatrix<T>> = a.iter().zip(b).map(|(x, y)| &x.transpose().kron(&i2) - &i1.kron(y)).collect();
    let (basis, margin) = stacked_nullspace(&blocks, n1 * n2, rtol);
    let mats = basis.columns().iter().map(|v| ComplexMatrix::from_vec_col_major(n2, n1, v)).collect();
    Ok(SolutionSpace { basis: mats, margin })
}

fn check_generators<T: Real>(a: &[ComplexMatrix<T>], b: &[ComplexMatrix<T>]) -> Result<()> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::DimensionMismatch("generator lists must be non-empty and of equal length".into()));
    }
    Ok(())
}

fn is_skew_hermitian<T: Real>(x: &ComplexMatrix<T>) -> bool {
    x.is_square() && (x + &x.adjoint()).frobenius_norm() <= T::identity_tol() * x.frobenius_norm().max(T::one())
}

const SPECTRAL_SEED: u64 = 0x5eed;

/// All `T` (`n2 × n1`) with `T a_i = b_i T`.
///
/// For skew-Hermitian generators any solution intertwines the Hermitian
/// matrices `i a(x)` and `i b(x)` of a random combination `x`, so it only
/// connects eigenvectors with (nearly) equal eigenvalues. Solving for those
/// entries alone shrinks the system from `n1 n2` unknowns to a few dozen.
/// Close eigenvalues are merged generously: that only adds unknowns, and every
/// generator equation is still imposed. Other inputs use the dense system.
pub fn intertwiner_space<T: Real>(a: &[ComplexMatrix<T>], b: &[ComplexMatrix<T>], rtol: T) -> Result<SolutionSpace<T>> {
    check_generators(a, b)?;
    if !a.iter().chain(b).all(is_skew_hermitian) {
        return intertwiner_space_dense(a, b, rtol);
    }
    let n1 = a[0].rows();
    let n2 = b[0].rows();
    let mut rng = SeededRng::seed_from_u64(SPECTRAL_SEED);
    let coeffs: Vec<T> = crate::linalg::random::gaussian_reals(a.len(), &mut rng);
    let combine = |gens: &[ComplexMatrix<T>], n: usize| {
        gens.iter().zip(&coeffs).fold(ComplexMatrix::zeros(n, n), |acc, (g, &c)| &acc + &g.scale(Complex::new(T::zero(), c)))
    };
    let ha = combine(a, n1);
    let hb = combine(b, n2);
    let ha = (&ha + &ha.adjoint()).scale_real(lit(0.5));
    let hb = (&hb + &hb.adjoint()).scale_real(lit(0.5));
    let (la, ua) = hermitian_eigen(&ha)?;
    let (lb, ub) = hermitian_eigen(&hb)?;
    let spread = la.iter().chain(&lb).fold(T::one(), |m, v| m.max(v.abs()));
    let tol = lit::<T>(1e-6) * spread;
    let pairs: Vec<(usize, usize)> =
        (0..n2).flat_map(|p| (0..n1).map(move |q| (p, q))).filter(|&(p, q)| (lb[p] - la[q]).abs() <= tol).collect();
    if pairs.is_empty() {
        return Ok(SolutionSpace { basis: Vec::new(), margin: T::infinity() });
    }
    let ap: Vec<ComplexMatrix<T>> = a.iter().map(|x| &(&ua.adjoint() * x) * &ua).collect();
    let bp: Vec<ComplexMatrix<T>> = b.iter().map(|x| &(&ub.adjoint() * x) * &ub).collect();
    // Column for unknown E_pq: entries of E_pq A' - B' E_pq, i.e. row p of A'
    // placed in row p, minus column p of B' placed in column q.
    let rows_per = n2 * n1;
    let mut sys = ComplexMatrix::zeros(a.len() * rows_per, pairs.len());
    for (k, (x, y)) in ap.iter().zip(&bp).enumerate() {
        let off = k * rows_per;
        for (col, &(p, q)) in pairs.iter().enumerate() {
            for s in 0..n1 {
                let r = off + p * n1 + s;
                sys[(r, col)] = sys[(r, col)] + x[(q, s)];
            }
            for r2 in 0..n2 {
                let r = off + r2 * n1 + q;
                sys[(r, col)] = sys[(r, col)] - y[(r2, p)];
            }
        }
    }
    let (basis, margin) = stacked_nullspace(&[sys], pairs.len(), rtol);
    let mats = basis
        .columns()
        .iter()
        .map(|v| {
            let mut tp = ComplexMatrix::zeros(n2, n1);
            for (i, &(p, q)) in pairs.iter().enumerate() {
                tp[(p, q)] = v[i];
            }
            &(&ub * &tp) * &ua.adjoint()
        })
        .collect();
    Ok(SolutionSpace { basis: mats, margin })
}

/// Operators commuting with every generator.
pub fn commutant<T: Real>(generators: &[ComplexMatrix<T>], rtol: T) -> Result<SolutionSpace<T>> {
    intertwiner_space(generators, generators, rtol)
}

/// Real dimension of the operators in the commutant that also commute with the
/// antilinear map `v ↦ m conj(v)`.
pub fn structure_commutant_dim<T: Real>(commutant: &SolutionSpace<T>, m: &ComplexMatrix<T>, rtol: T) -> (usize, T) {
    let d = commutant.dim();
    if d == 0 {
        return (0, T::infinity());
    }
    // T = sum (u_k + i w_k) C_k with T M - M conj(T) = 0, split into real and
    // imaginary parts of every entry.
    let cols: Vec<(ComplexMatrix<T>, ComplexMatrix<T>)> = commutant
        .basis
        .iter()
        .map(|c| {
            let cm = c * m;
            let mc = m * &c.conj();
            // u-part: C M - M conj(C); w-part: i (C M + M conj(C)).
            (&cm - &mc, (&cm + &mc).scale(Complex::new(T::zero(), T::one())))
        })
        .collect();
    let len = m.rows() * m.cols();
    let mut sys = ComplexMatrix::zeros(2 * len, 2 * d);
    for (k, (u, w)) in cols.iter().enumerate() {
        for (i, (zu, zw)) in u.data().iter().zip(w.data()).enumerate() {
            sys[(i, k)] = Complex::new(zu.re, T::zero());
            sys[(len + i, k)] = Complex::new(zu.im, T::zero());
            sys[(i, d + k)] = Complex::new(zw.re, T::zero());
            sys[(len + i, d + k)] = Complex::new(zw.im, T::zero());
        }
    }
    let (basis, margin) = stacked_nullspace(&[sys], 2 * d, rtol);
    (basis.cols(), margin)
}

/// Result of an irreducibility test.
#[derive(Clone, Debug, PartialEq)]
pub struct Irreducibility<T> {
    pub complex_commutant_dim: usize,
    /// Real dimension of the commutant inside the operators commuting with the
    /// declared antilinear structure, if the representation has one.
    pub structure_commutant_dim: Option<usize>,
    pub margin: T,
}

impl<T> Irreducibility<T> {
    pub fn is_irreducible(&self) -> bool {
        self.complex_commutant_dim == 1 && self.structure_commutant_dim.is_none_or(|d| d == 1)
    }
}

pub fn irreducibility<T: Real>(rep: &Representation<T>) -> Result<Irreducibility<T>> {
    let gens = rep.generator_images();
    let c = commutant(&gens, T::rank_rtol())?;
    let mut margin = c.margin;
    let sdim = rep.structure().map(|s| {
        let (d, m) = structure_commutant_dim(&c, s.matrix(), T::rank_rtol());
        margin = margin.min(m);
        d
    });
    Ok(Irreducibility { complex_commutant_dim: c.dim(), structure_commutant_dim: sdim, margin })
}

/// Minimal invariant subspaces from the eigenspaces of a random Hermitian
/// element of the commutant. Bases are orthonormal for the standard product
/// (representations here are unitary in their coordinates). Sorted by
/// increasing dimension.
pub fn invariant_subspaces<T: Real>(rep: &Representation<T>, seed: u64) -> Result<Vec<ComplexMatrix<T>>> {
    if !rep.hermitian().is_standard(T::identity_tol()) {
        return Err(Error::Usage("invariant_subspaces expects a representation unitary for the standard product".into()));
    }
    joint_invariant_subspaces(&rep.generator_images(), seed)
}

/// Minimal joint invariant subspaces of a family of skew-Hermitian matrices.
pub fn joint_invariant_subspaces<T: Real>(gens: &[ComplexMatrix<T>], seed: u64) -> Result<Vec<ComplexMatrix<T>>> {
    let n = gens.first().ok_or_else(|| Error::InvalidInput("no generators".into()))?.rows();
    let c = commutant(gens, T::rank_rtol())?;
    if c.margin < lit(1e3) {
        return Err(Error::IndeterminateRank(format!("commutant rank margin {:e}", crate::scalar::to_f64(c.margin))));
    }
    let mut rng = SeededRng::seed_from_u64(seed);
    let mut h = ComplexMatrix::zeros(n, n);
    for ck in &c.basis {
        let a: Complex<T> = complex_gaussian(&mut rng);
        h = &(&h + &ck.scale(a)) + &ck.adjoint().scale(a.conj());
    }
    let (vals, vecs) = hermitian_eigen(&h)?;
    let spread = vals.iter().fold(T::zero(), |m, v| m.max(v.abs())).max(T::one());
    let gap = lit::<T>(1e-8) * spread;
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, v) in vals.iter().enumerate() {
        match groups.last_mut() {
            Some(g) if (*v - vals[*g.last().unwrap()]).abs() <= gap => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    let mut out: Vec<ComplexMatrix<T>> = groups.iter().map(|g| vecs.select_columns(g)).collect();
    for sub in &out {
        for (i, x) in gens.iter().enumerate() {
            let r = invariance_residual(sub, x);
            if r > lit::<T>(1e-9) * x.frobenius_norm().max(T::one()) {
                return Err(Error::Inconsistent(format!("eigenspace is not invariant under generator {i} (residual {r:e})")));
            }
        }
    }
    out.sort_by_key(|b| b.cols());
    Ok(out)
}

/// An invertible intertwiner `T` with `T Φ₁*(X) = Φ₂*(X) T`.
#[derive(Clone, Debug)]
pub struct Intertwiner<T> {
    pub matrix: ComplexMatrix<T>,
    pub condition_number: T,
    pub solution_dim: usize,
    pub residual: T,
}

/// Searches for an invertible intertwiner from `rep1` to `rep2`. Returns
/// `Ok(None)` when a random element of the solution space is singular.
pub fn find_intertwiner<T: Real>(rep1: &Representation<T>, rep2: &Representation<T>, seed: u64) -> Result<Option<Intertwiner<T>>> {
    if rep1.group().name() != rep2.group().name() {
        return Err(Error::DimensionMismatch(format!("representations of {} and {}", rep1.group().name(), rep2.group().name())));
    }
    if rep1.dim() != rep2.dim() {
        return Ok(None);
    }
    let g1 = rep1.generator_images();
    let g2 = rep2.generator_images();
    let space = intertwiner_space(&g1, &g2, T::rank_rtol())?;
    if space.dim() == 0 {
        return Ok(None);
    }
    let mut rng = SeededRng::seed_from_u64(seed);
    let n = rep1.dim();
    let mut t = ComplexMatrix::zeros(n, n);
    for b in &space.basis {
        t = &t + &b.scale(complex_gaussian(&mut rng));
    }
    let f = t.frobenius_norm();
    t = t.scale_real(f.recip() * lit::<T>(n as f64).sqrt());
    if rank(&t, T::rank_rtol()) < n {
        return Ok(None);
    }
    let residual = g1.iter().zip(&g2).map(|(a, b)| (&t * a).distance(&(b * &t))).fold(T::zero(), T::max);
    Ok(Some(Intertwiner { condition_number: condition_number(&t), matrix: t, solution_dim: space.dim(), residual }))
}

/// `|| basis^H A basis ||` for the antilinear `A v = m conj(v)`: zero exactly
/// when `A` maps the span to its orthogonal complement.
pub fn total_complexity_residual<T: Real>(basis: &ComplexMatrix<T>, m: &ComplexMatrix<T>) -> T {
    (&basis.adjoint() * &(m * &basis.conj())).frobenius_norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::cartan::{cartan_so3, cartan_su3};
    use crate::lie::group::MatrixLieGroup;
    use std::sync::Arc;

    #[test]
    fn spectral_and_dense_solvers_agree() {
        let so3 = cartan_so3::<f64>().unwrap();
        let su3 = cartan_su3::<f64>().unwrap();
        for rep in [&so3, &su3] {
            let g = rep.generator_images();
            let fast = intertwiner_space(&g, &g, 1e-9).unwrap();
            let dense = intertwiner_space_dense(&g, &g, 1e-9).unwrap();
            assert_eq!(fast.dim(), dense.dim());
            for t in &fast.basis {
                for x in &g {
                    assert!((t * x).distance(&(x * t)) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn cartan_representations_are_irreducible() {
        for rep in [cartan_so3::<f64>().unwrap(), cartan_su3().unwrap()] {
            let r = irreducibility(&rep).unwrap();
            assert_eq!(r.complex_commutant_dim, 1, "{}", rep.name());
            assert!(r.margin > 1e3);
            let subs = invariant_subspaces(&rep, 1).unwrap();
            assert_eq!(subs.len(), 1);
            assert_eq!(subs[0].cols(), rep.dim());
        }
    }

    #[test]
    fn real_structure_commutant_of_so3_cartan() {
        let rep = cartan_so3::<f64>().unwrap();
        let r = irreducibility(&rep).unwrap();
        assert_eq!(r.structure_commutant_dim, Some(1));
        assert!(r.is_irreducible());
    }

    #[test]
    fn direct_sum_splits() {
        let so3 = cartan_so3::<f64>().unwrap();
        let s1 = so3.clone();
        let s2 = so3.clone();
        let grow = |m: ComplexMatrix<f64>, one: bool| {
            let mut out = ComplexMatrix::zeros(6, 6);
            out[(0, 0)] = Complex::new(if one { 1.0 } else { 0.0 }, 0.0);
            for i in 0..5 {
                for j in 0..5 {
                    out[(i + 1, j + 1)] = m[(i, j)];
                }
            }
            out
        };
        let sum = Representation::new(
            "5+1",
            MatrixLieGroup::so(3),
            6,
            Arc::new(move |g| grow((s1.group_map())(g), true)),
            Arc::new(move |x| grow((s2.algebra_map())(x), false)),
        );
        let subs = invariant_subspaces(&sum, 3).unwrap();
        assert_eq!(subs.iter().map(|b| b.cols()).collect::<Vec<_>>(), vec![1, 5]);
        let t = find_intertwiner(&so3, &so3, 4).unwrap().unwrap();
        assert!(t.residual < 1e-10);
        assert!(find_intertwiner(&sum, &cartan_su3().unwrap(), 1).is_err());
    }
}
