//! Finite-dimensional representations given by explicit group and algebra maps.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;
use rand::Rng;

use super::group::MatrixLieGroup;
use crate::error::{Error, Result};
use crate::linalg::random::uniform;
use crate::linalg::{expm, AntilinearStructure, BilinearForm, ComplexMatrix, SesquilinearForm};
use crate::scalar::Real;

/// A map from matrices to matrices, shared between threads.
pub type MatrixMap<T> = Arc<dyn Fn(&ComplexMatrix<T>) -> ComplexMatrix<T> + Send + Sync>;

/// `ρ: G -> GL(V)` together with its differential `Φ*` and the structures on
/// `V` that `ρ` is declared to preserve.
#[derive(Clone)]
pub struct Representation<T: Real> {
    name: String,
    group: MatrixLieGroup<T>,
    dim: usize,
    group_map: MatrixMap<T>,
    algebra_map: MatrixMap<T>,
    hermitian: SesquilinearForm<T>,
    bilinear: Option<BilinearForm<T>>,
    structure: Option<AntilinearStructure<T>>,
}

impl<T: Real> fmt::Debug for Representation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Representation")
            .field("name", &self.name)
            .field("group", &self.group.name())
            .field("dim", &self.dim)
            .field("bilinear", &self.bilinear.is_some())
            .field("structure", &self.structure.as_ref().map(|s| s.sign()))
            .finish()
    }
}

impl<T: Real> Representation<T> {
    /// A representation preserving the standard Hermitian product on `C^dim`.
    pub fn new(name: impl Into<String>, group: MatrixLieGroup<T>, dim: usize, group_map: MatrixMap<T>, algebra_map: MatrixMap<T>) -> Self {
        Self {
            name: name.into(),
            group,
            dim,
            group_map,
            algebra_map,
            hermitian: SesquilinearForm::standard(dim),
            bilinear: None,
            structure: None,
        }
    }

    pub fn with_hermitian(mut self, h: SesquilinearForm<T>) -> Result<Self> {
        if h.dim() != self.dim {
            return Err(Error::DimensionMismatch("Hermitian product does not match the representation space".into()));
        }
        self.hermitian = h;
        Ok(self)
    }

    pub fn with_bilinear(mut self, b: BilinearForm<T>) -> Result<Self> {
        if b.dim() != self.dim {
            return Err(Error::DimensionMismatch("bilinear form does not match the representation space".into()));
        }
        self.bilinear = Some(b);
        Ok(self)
    }

    pub fn with_structure(mut self, s: AntilinearStructure<T>) -> Result<Self> {
        if s.dim() != self.dim {
            return Err(Error::DimensionMismatch("antilinear structure does not match the representation space".into()));
        }
        self.structure = Some(s);
        Ok(self)
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> &MatrixLieGroup<T> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hermitian(&self) -> &SesquilinearForm<T> {
        &self.hermitian
    }

    pub fn bilinear(&self) -> Option<&BilinearForm<T>> {
        self.bilinear.as_ref()
    }

    pub fn structure(&self) -> Option<&AntilinearStructure<T>> {
        self.structure.as_ref()
    }

    pub fn group_map(&self) -> &MatrixMap<T> {
        &self.group_map
    }

    pub fn algebra_map(&self) -> &MatrixMap<T> {
        &self.algebra_map
    }

    fn check_input(&self, x: &ComplexMatrix<T>) -> Result<()> {
        let n = self.group.matrix_size();
        if x.shape() != (n, n) {
            return Err(Error::DimensionMismatch(format!("{} expects {n}x{n} matrices, got {:?}", self.name, x.shape())));
        }
        Ok(())
    }

    /// `ρ(g)`.
    pub fn group_image(&self, g: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
        self.check_input(g)?;
        Ok((self.group_map)(g))
    }

    /// `Φ*(X)`.
    pub fn algebra_image(&self, x: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
        self.check_input(x)?;
        Ok((self.algebra_map)(x))
    }

    /// `Φ*` of every basis element of the group's algebra.
    pub fn generator_images(&self) -> Vec<ComplexMatrix<T>> {
        self.group.basis().iter().map(|x| (self.algebra_map)(x)).collect()
    }

    /// Residuals of the representation axioms on `samples` random inputs.
    pub fn check(&self, samples: usize, rng: &mut (impl Rng + ?Sized)) -> RepresentationChecks<T> {
        let z = T::zero();
        let mut out =
            RepresentationChecks { homomorphism: z, exp_compatibility: z, hermitian: z, bilinear: None, structure: None, bracket: z };
        let g = &self.group;
        for _ in 0..samples {
            let g1 = g.random_element(rng);
            let g2 = g.random_element(rng);
            let r1 = (self.group_map)(&g1);
            let r2 = (self.group_map)(&g2);
            out.homomorphism = out.homomorphism.max((self.group_map)(&(&g1 * &g2)).distance(&(&r1 * &r2)));

            let x = g.random_algebra_element(T::one(), rng);
            let t: T = uniform(-1.0, 1.0, rng);
            let lhs = (self.group_map)(&expm(&x.scale_real(t)).expect("finite input"));
            let rhs = expm(&(self.algebra_map)(&x).scale_real(t)).expect("finite input");
            out.exp_compatibility = out.exp_compatibility.max(lhs.distance(&rhs));

            let hg = self.hermitian.gram();
            out.hermitian = out.hermitian.max((&(&r1.transpose() * hg) * &r1.conj()).distance(hg));
            if let Some(b) = &self.bilinear {
                let res = (&(&r1.transpose() * b.gram()) * &r1).distance(b.gram());
                out.bilinear = Some(out.bilinear.unwrap_or(z).max(res));
            }
            if let Some(s) = &self.structure {
                out.structure = Some(out.structure.unwrap_or(z).max(s.commutation_residual(&r1)));
            }
        }
        let images = self.generator_images();
        for (i, x) in g.basis().iter().enumerate() {
            for (j, y) in g.basis().iter().enumerate().skip(i + 1) {
                let lhs = (self.algebra_map)(&x.commutator(y));
                let rhs = images[i].commutator(&images[j]);
                out.bracket = out.bracket.max(lhs.distance(&rhs));
            }
        }
        out
    }
}

/// Maximal residuals of the representation axioms over a sample.
#[derive(Clone, Debug, PartialEq)]
pub struct RepresentationChecks<T> {
    pub homomorphism: T,
    pub exp_compatibility: T,
    pub hermitian: T,
    pub bilinear: Option<T>,
    pub structure: Option<T>,
    pub bracket: T,
}

impl<T: Real> RepresentationChecks<T> {
    pub fn max(&self) -> T {
        [self.homomorphism, self.exp_compatibility, self.hermitian, self.bracket]
            .into_iter()
            .chain(self.bilinear)
            .chain(self.structure)
            .fold(T::zero(), T::max)
    }
}

/// An injective homomorphism of Lie algebras (and of the groups) between two
/// matrix groups, given by the same matrix formula on both levels.
#[derive(Clone)]
pub struct AlgebraEmbedding<T: Real> {
    name: String,
    source: MatrixLieGroup<T>,
    target: MatrixLieGroup<T>,
    map: MatrixMap<T>,
}

impl<T: Real> fmt::Debug for AlgebraEmbedding<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraEmbedding({}: {} -> {})", self.name, self.source.name(), self.target.name())
    }
}

impl<T: Real> AlgebraEmbedding<T> {
    /// Validates that basis images satisfy the target relations and stay
    /// linearly independent.
    pub fn new(name: impl Into<String>, source: MatrixLieGroup<T>, target: MatrixLieGroup<T>, map: MatrixMap<T>) -> Result<Self> {
        let name = name.into();
        let n = target.matrix_size();
        let mut coords = Vec::new();
        for x in source.basis() {
            let y = map(x);
            if y.shape() != (n, n) {
                return Err(Error::Embedding(format!("{name}: image has shape {:?}", y.shape())));
            }
            let r = target.algebra_residual(&y)?;
            if r > T::identity_tol() {
                return Err(Error::Embedding(format!("{name}: image leaves the algebra of {} (residual {r:e})", target.name())));
            }
            coords.push(target.coordinates(&y)?);
        }
        let m = ComplexMatrix::from_fn(target.dim(), source.dim(), |i, j| Complex::new(coords[j][i], T::zero()));
        let rank = crate::linalg::rank(&m, T::rank_rtol());
        if rank != source.dim() {
            return Err(Error::Embedding(format!("{name}: basis images have rank {rank}, expected {}", source.dim())));
        }
        Ok(Self { name, source, target, map })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &MatrixLieGroup<T> {
        &self.source
    }

    pub fn target(&self) -> &MatrixLieGroup<T> {
        &self.target
    }

    pub fn apply(&self, x: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        (self.map)(x)
    }

    pub fn identity(group: MatrixLieGroup<T>) -> Self {
        Self { name: "identity".into(), source: group.clone(), target: group, map: Arc::new(|x: &ComplexMatrix<T>| x.clone()) }
    }
}

/// `Y ↦ diag(Y, conj Y)` from `su(3)` into `sp(3)`.
pub fn su3_in_sp3<T: Real>() -> Result<AlgebraEmbedding<T>> {
    let map: MatrixMap<T> = Arc::new(|y: &ComplexMatrix<T>| {
        let z = ComplexMatrix::zeros(3, 3);
        ComplexMatrix::block2(y, &z, &z, &y.conj())
    });
    AlgebraEmbedding::new("su3_in_sp3", MatrixLieGroup::su(3), MatrixLieGroup::sp(3), map)
}

/// Inclusion of real skew matrices into `su(3)`.
pub fn so3_in_su3<T: Real>() -> Result<AlgebraEmbedding<T>> {
    let map: MatrixMap<T> = Arc::new(|y: &ComplexMatrix<T>| y.clone());
    AlgebraEmbedding::new("so3_in_su3", MatrixLieGroup::so(3), MatrixLieGroup::su(3), map)
}

/// `ρ ∘ ι` for an embedding `ι` of a subgroup into the group of `rep`.
pub fn restrict<T: Real>(rep: &Representation<T>, embedding: &AlgebraEmbedding<T>) -> Result<Representation<T>> {
    if embedding.target().name() != rep.group().name() {
        return Err(Error::Embedding(format!(
            "embedding lands in {}, representation is of {}",
            embedding.target().name(),
            rep.group().name()
        )));
    }
    let (e1, g) = (embedding.map.clone(), rep.group_map.clone());
    let (e2, a) = (embedding.map.clone(), rep.algebra_map.clone());
    Ok(Representation {
        name: format!("{}|{}", rep.name, embedding.source().name()),
        group: embedding.source().clone(),
        dim: rep.dim,
        group_map: Arc::new(move |x| g(&e1(x))),
        algebra_map: Arc::new(move |x| a(&e2(x))),
        hermitian: rep.hermitian.clone(),
        bilinear: rep.bilinear.clone(),
        structure: rep.structure.clone(),
    })
}

/// Restriction of `rep` to the invariant subspace spanned by the columns of
/// `basis`, which must be orthonormal for the representation's Hermitian
/// product. The Hermitian product is restricted; the bilinear form and the
/// antilinear structure are kept only where they restrict to nondegenerate
/// (resp. valid) data.
pub fn subrepresentation<T: Real>(rep: &Representation<T>, basis: &ComplexMatrix<T>, tol: T) -> Result<Representation<T>> {
    if basis.rows() != rep.dim {
        return Err(Error::DimensionMismatch("subspace basis does not live in the representation space".into()));
    }
    let g = rep.hermitian.gram();
    // Coordinates of v in the basis: c_i = H(v, b_i) = b_i^H G^T v, i.e. c = P v.
    let p = &basis.adjoint() * &g.transpose();
    let ortho = (&p * basis).distance(&ComplexMatrix::identity(basis.cols()));
    if ortho > tol {
        return Err(Error::InvalidInput(format!("subspace basis is not orthonormal (residual {ortho:e})")));
    }
    for (i, img) in rep.generator_images().iter().enumerate() {
        let xb = img * basis;
        let res = xb.distance(&(basis * &(&p * &xb)));
        if res > tol * img.frobenius_norm().max(T::one()) {
            return Err(Error::Construction(format!("subspace is not invariant under generator {i} (residual {res:e})")));
        }
    }
    let h = SesquilinearForm::new(&(&basis.transpose() * g) * &basis.conj())?;
    let bilinear = rep.bilinear.as_ref().and_then(|b| BilinearForm::new(&(&basis.transpose() * b.gram()) * basis, b.symmetry()).ok());
    let structure = rep.structure.as_ref().and_then(|s| {
        let m = &p * &s.apply_columns(basis);
        AntilinearStructure::new(m, s.sign(), &h, tol).ok()
    });
    let (p1, b1, g1) = (p.clone(), basis.clone(), rep.group_map.clone());
    let (p2, b2, a2) = (p, basis.clone(), rep.algebra_map.clone());
    Ok(Representation {
        name: format!("{}[{}]", rep.name, basis.cols()),
        group: rep.group.clone(),
        dim: basis.cols(),
        group_map: Arc::new(move |x| &(&p1 * &g1(x)) * &b1),
        algebra_map: Arc::new(move |x| &(&p2 * &a2(x)) * &b2),
        hermitian: h,
        bilinear,
        structure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{seeded_rng, standard_j_matrix};

    fn defining(group: MatrixLieGroup<f64>) -> Representation<f64> {
        let n = group.matrix_size();
        Representation::new("defining", group, n, Arc::new(|g| g.clone()), Arc::new(|x| x.clone()))
    }

    #[test]
    fn defining_representations_pass_checks() {
        let mut rng = seeded_rng(1);
        for g in [MatrixLieGroup::so(3), MatrixLieGroup::su(3), MatrixLieGroup::sp(3)] {
            let rep = defining(g);
            assert!(rep.check(5, &mut rng).max() < 1e-10, "{}", rep.name());
        }
    }

    #[test]
    fn embeddings_validate() {
        let e = su3_in_sp3::<f64>().unwrap();
        let x1 = MatrixLieGroup::<f64>::so(3).basis()[0].clone();
        let img = e.apply(&so3_in_su3::<f64>().unwrap().apply(&x1));
        let j = standard_j_matrix::<f64>(3);
        assert!((&img * &j).distance(&(&j * &img)) < 1e-15);
        assert!(img.map(|z| Complex::new(z.im, 0.0)).max_abs() == 0.0);
        assert!(e.apply(&ComplexMatrix::zeros(3, 3)).max_abs() == 0.0);
        let bad: MatrixMap<f64> = Arc::new(|y: &ComplexMatrix<f64>| {
            let z = ComplexMatrix::zeros(3, 3);
            ComplexMatrix::block2(y, &z, &z, y)
        });
        assert!(AlgebraEmbedding::new("bad", MatrixLieGroup::su(3), MatrixLieGroup::sp(3), bad).is_err());
    }

    #[test]
    fn restrict_along_identity_is_unchanged() {
        let rep = defining(MatrixLieGroup::su(3));
        let r = restrict(&rep, &AlgebraEmbedding::identity(MatrixLieGroup::su(3))).unwrap();
        let mut rng = seeded_rng(2);
        let g = rep.group().random_element(&mut rng);
        assert_eq!(rep.group_image(&g).unwrap(), r.group_image(&g).unwrap());
    }
}
