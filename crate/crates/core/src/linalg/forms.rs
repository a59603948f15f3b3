//! Hermitian products, complex bilinear forms and antilinear structures.
//!
//! Convention: a sesquilinear form is linear in its first slot and antilinear
//! in its second, `H(x, y) = x^T G conj(y)`. With that convention the relation
//! `H(v, A w) = b(v, w)` defines an antilinear map `A` from a bilinear form `b`.

use num_complex::Complex;

use super::decomp::{hermitian_eigen, inverse, singular_values};
use super::matrix::ComplexMatrix;
use super::vector::ComplexVector;
use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

fn check_dims<T: Real>(n: usize, x: &ComplexVector<T>, y: &ComplexVector<T>) -> Result<()> {
    if x.len() != n || y.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "form of dimension {n} evaluated on vectors of dimension {} and {}",
            x.len(),
            y.len()
        )));
    }
    Ok(())
}

/// Positive definite Hermitian product given by its Gram matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SesquilinearForm<T> {
    gram: ComplexMatrix<T>,
}

impl<T: Real> SesquilinearForm<T> {
    pub fn new(gram: ComplexMatrix<T>) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch("Gram matrix must be square".into()));
        }
        let scale = gram.max_abs();
        if gram.distance(&gram.adjoint()) > T::identity_tol() * scale.max(T::one()) {
            return Err(Error::InvalidInput("Gram matrix of a Hermitian product must be Hermitian".into()));
        }
        let sym = (&gram + &gram.adjoint()).scale_real(lit(0.5));
        let (vals, _) = hermitian_eigen(&sym)?;
        if vals.first().is_none_or(|&l| l <= T::zero()) {
            return Err(Error::InvalidInput("Hermitian product must be positive definite".into()));
        }
        Ok(Self { gram })
    }

    /// The standard product `sum x_i conj(y_i)` on `C^n`.
    pub fn standard(n: usize) -> Self {
        Self { gram: ComplexMatrix::identity(n) }
    }

    pub fn gram(&self) -> &ComplexMatrix<T> {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn is_standard(&self, tol: T) -> bool {
        self.gram.distance(&ComplexMatrix::identity(self.dim())) <= tol
    }

    pub fn eval(&self, x: &ComplexVector<T>, y: &ComplexVector<T>) -> Result<Complex<T>> {
        check_dims(self.dim(), x, y)?;
        Ok(x.dot_bilinear(&self.gram.mul_vec(&y.conj())))
    }

    pub fn norm(&self, x: &ComplexVector<T>) -> Result<T> {
        Ok(self.eval(x, x)?.re.max(T::zero()).sqrt())
    }

    /// Restriction to the span of the columns of `basis`.
    pub fn restrict(&self, basis: &ComplexMatrix<T>) -> Result<Self> {
        Self::new(&(&basis.transpose() * &self.gram) * &basis.conj())
    }
}

/// Symmetry type of a complex bilinear form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
}

impl Symmetry {
    pub fn sign(self) -> i8 {
        match self {
            Symmetry::Symmetric => 1,
            Symmetry::Antisymmetric => -1,
        }
    }
}

/// Nondegenerate complex-bilinear form `b(x, y) = x^T G y`, symmetric or
/// antisymmetric.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearForm<T> {
    gram: ComplexMatrix<T>,
    symmetry: Symmetry,
}

impl<T: Real> BilinearForm<T> {
    pub fn new(gram: ComplexMatrix<T>, symmetry: Symmetry) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch("Gram matrix must be square".into()));
        }
        let flipped = match symmetry {
            Symmetry::Symmetric => gram.transpose(),
            Symmetry::Antisymmetric => -&gram.transpose(),
        };
        let scale = gram.max_abs().max(T::one());
        if gram.distance(&flipped) > T::identity_tol() * scale {
            return Err(Error::InvalidInput(format!("Gram matrix is not {symmetry:?}")));
        }
        let s = singular_values(&gram);
        if s.last().is_none_or(|&lo| lo <= T::rank_rtol() * s[0]) {
            return Err(Error::InvalidInput("bilinear form is degenerate".into()));
        }
        Ok(Self { gram, symmetry })
    }

    /// The standard symmetric form `sum x_i y_i`.
    pub fn standard_symmetric(n: usize) -> Self {
        Self { gram: ComplexMatrix::identity(n), symmetry: Symmetry::Symmetric }
    }

    pub fn gram(&self) -> &ComplexMatrix<T> {
        &self.gram
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn eval(&self, x: &ComplexVector<T>, y: &ComplexVector<T>) -> Result<Complex<T>> {
        check_dims(self.dim(), x, y)?;
        Ok(x.dot_bilinear(&self.gram.mul_vec(y)))
    }

    pub fn restrict(&self, basis: &ComplexMatrix<T>) -> Result<Self> {
        Self::new(&(&basis.transpose() * &self.gram) * basis, self.symmetry)
    }
}

/// Sign of `A^2`: `+1` for a real structure, `-1` for a quaternionic one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureSign {
    Real,
    Quaternionic,
}

impl StructureSign {
    pub fn sign(self) -> i8 {
        match self {
            StructureSign::Real => 1,
            StructureSign::Quaternionic => -1,
        }
    }
}

/// Antilinear map `v -> M conj(v)` with `A^2 = +-id`, isometric for an ambient
/// Hermitian product.
#[derive(Clone, Debug, PartialEq)]
pub struct AntilinearStructure<T> {
    mat: ComplexMatrix<T>,
    sign: StructureSign,
}

impl<T: Real> AntilinearStructure<T> {
    /// Validates `M conj(M) = sign * id` and the isometry property against `h`.
    pub fn new(mat: ComplexMatrix<T>, sign: StructureSign, h: &SesquilinearForm<T>, tol: T) -> Result<Self> {
        if !mat.is_square() || mat.rows() != h.dim() {
            return Err(Error::DimensionMismatch("structure matrix does not match the Hermitian product".into()));
        }
        let n = mat.rows();
        let target = ComplexMatrix::identity(n).scale_real(lit(f64::from(sign.sign())));
        let sq = (&mat * &mat.conj()).distance(&target);
        if sq > tol {
            return Err(Error::Incompatible(format!("structure squares to {:?} only up to {sq:e}", sign)));
        }
        let iso = (&(&mat.transpose() * h.gram()) * &mat.conj()).distance(&h.gram().conj());
        if iso > tol {
            return Err(Error::Incompatible(format!("antilinear map is not an isometry (residual {iso:e})")));
        }
        Ok(Self { mat, sign })
    }

    /// Entrywise complex conjugation on `C^n`.
    pub fn conjugation(n: usize) -> Self {
        Self { mat: ComplexMatrix::identity(n), sign: StructureSign::Real }
    }

    /// `J e_i = e_{n+i}`, `J e_{n+i} = -e_i` on `C^{2n}`.
    pub fn standard_quaternionic(n: usize) -> Self {
        Self { mat: standard_j_matrix(n), sign: StructureSign::Quaternionic }
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.mat
    }

    pub fn sign(&self) -> StructureSign {
        self.sign
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn apply(&self, v: &ComplexVector<T>) -> ComplexVector<T> {
        self.mat.mul_vec(&v.conj())
    }

    /// Applies the structure to each column.
    pub fn apply_columns(&self, basis: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        &self.mat * &basis.conj()
    }

    /// `|| X A - A X ||` for a complex-linear `X`, i.e. `|| X M - M conj(X) ||`.
    pub fn commutation_residual(&self, x: &ComplexMatrix<T>) -> T {
        (&(x * &self.mat) - &(&self.mat * &x.conj())).frobenius_norm()
    }

    /// Structure induced on an invariant subspace with orthonormal basis `basis`
    /// (standard ambient product).
    pub fn restrict(&self, basis: &ComplexMatrix<T>, tol: T) -> Result<Self> {
        let m = &basis.adjoint() * &self.apply_columns(basis);
        let h = SesquilinearForm::standard(basis.cols());
        Self::new(m, self.sign, &h, tol)
    }
}

/// `[[0, -I], [I, 0]]` of size `2n`.
pub fn standard_j_matrix<T: Real>(n: usize) -> ComplexMatrix<T> {
    let z = ComplexMatrix::zeros(n, n);
    let i = ComplexMatrix::identity(n);
    ComplexMatrix::block2(&z, &(-&i), &i, &z)
}

pub fn eval_sesquilinear<T: Real>(form: &SesquilinearForm<T>, x: &ComplexVector<T>, y: &ComplexVector<T>) -> Result<Complex<T>> {
    form.eval(x, y)
}

pub fn eval_bilinear<T: Real>(form: &BilinearForm<T>, x: &ComplexVector<T>, y: &ComplexVector<T>) -> Result<Complex<T>> {
    form.eval(x, y)
}

/// The antilinear `A` determined by `H(v, A w) = b(v, w)`, validated to be an
/// involutive (symmetric `b`) or quaternionic (antisymmetric `b`) isometry.
pub fn structure_from_forms<T: Real>(h: &SesquilinearForm<T>, b: &BilinearForm<T>) -> Result<AntilinearStructure<T>> {
    structure_from_forms_with_tol(h, b, T::identity_tol())
}

pub fn structure_from_forms_with_tol<T: Real>(h: &SesquilinearForm<T>, b: &BilinearForm<T>, tol: T) -> Result<AntilinearStructure<T>> {
    if h.dim() != b.dim() {
        return Err(Error::DimensionMismatch("forms act on different dimensions".into()));
    }
    // H(v, M conj w) = v^T G conj(M) w must equal v^T B w.
    let mat = (&inverse(h.gram())? * b.gram()).conj();
    let sign = match b.symmetry() {
        Symmetry::Symmetric => StructureSign::Real,
        Symmetry::Antisymmetric => StructureSign::Quaternionic,
    };
    AntilinearStructure::new(mat, sign, h, tol)
}

/// Splits `v = x + i y` into points `x`, `y` fixed by a real structure.
pub fn re_im_split<T: Real>(structure: &AntilinearStructure<T>, v: &ComplexVector<T>) -> Result<(ComplexVector<T>, ComplexVector<T>)> {
    if structure.sign() != StructureSign::Real {
        return Err(Error::Usage("real/imaginary split needs a real structure (A^2 = +id)".into()));
    }
    if v.len() != structure.dim() {
        return Err(Error::DimensionMismatch("vector does not match the structure".into()));
    }
    let av = structure.apply(v);
    let half = lit::<T>(0.5);
    let x = (v + &av).scale_real(half);
    let y = (v - &av).scale(Complex::new(T::zero(), -half));
    Ok((x, y))
}
