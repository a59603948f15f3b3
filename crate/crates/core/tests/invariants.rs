use num_complex::Complex64;
use proptest::prelude::*;

use skewgeo_core::certify::{Construction, ConstructionId};
use skewgeo_core::exterior::{contraction, induced_map3, ExteriorCube, Trivector};
use skewgeo_core::lie::MatrixLieGroup;
use skewgeo_core::linalg::random::{gaussian_matrix, gaussian_reals, gaussian_vector, seeded_rng};
use skewgeo_core::linalg::{expm, AntilinearStructure, ComplexMatrix, ComplexVector, SesquilinearForm};
use skewgeo_core::spaces::{
    characteristic_angle_grassmann, characteristic_angle_quadric, ComplexQuadric, Grassmannian, PlanePoint, QuadricPoint,
};
use skewgeo_core::CMatrix;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 24, ..ProptestConfig::default() }
}

fn quadric_base(q: &ComplexQuadric<f64>) -> QuadricPoint<f64> {
    let n = q.dim();
    let mut z = ComplexVector::zeros(n);
    z[0] = Complex64::new(1.0, 0.0);
    z[1] = Complex64::new(0.0, 1.0);
    QuadricPoint::new(q, z).unwrap()
}

fn plane(seed: u64) -> PlanePoint<f64> {
    let mut rng = seeded_rng(seed);
    let v: Vec<_> = (0..2).map(|_| gaussian_vector(6, &mut rng)).collect();
    PlanePoint::new(Grassmannian::complex(6).unwrap(), &v).unwrap()
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn hermitian_forms_are_conjugate_symmetric(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let a = gaussian_matrix::<f64>(4, 4, &mut rng);
        let gram = &(&a.adjoint() * &a) + &ComplexMatrix::identity(4);
        let h = SesquilinearForm::new(gram).unwrap();
        let x = gaussian_vector(4, &mut rng);
        let y = gaussian_vector(4, &mut rng);
        let d = h.eval(&x, &y).unwrap() - h.eval(&y, &x).unwrap().conj();
        prop_assert!(d.norm() < 1e-12);
        prop_assert!(h.eval(&x, &x).unwrap().re > 0.0);
    }

    #[test]
    fn antilinear_structures_square_to_sign(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let v = gaussian_vector::<f64>(6, &mut rng);
        let a = AntilinearStructure::<f64>::conjugation(6);
        prop_assert!(a.apply(&a.apply(&v)).distance(&v) < 1e-14);
        let j = AntilinearStructure::<f64>::standard_quaternionic(3);
        prop_assert!(j.apply(&j.apply(&v)).distance(&v.scale_real(-1.0)) < 1e-14);
    }

    #[test]
    fn exponential_inverts(seed in any::<u64>(), scale in 0.01f64..3.0) {
        let mut rng = seeded_rng(seed);
        let x = gaussian_matrix::<f64>(5, 5, &mut rng).scale_real(scale);
        let prod = &expm(&x).unwrap() * &expm(&x.scale_real(-1.0)).unwrap();
        prop_assert!(prod.distance(&ComplexMatrix::identity(5)) < 1e-9 * (1.0 + x.frobenius_norm()).exp());
    }

    #[test]
    fn induced_map_is_functorial(seed in any::<u64>(), anti_a in any::<bool>(), anti_b in any::<bool>()) {
        let mut rng = seeded_rng(seed);
        let a = gaussian_matrix::<f64>(6, 6, &mut rng);
        let b = gaussian_matrix::<f64>(6, 6, &mut rng);
        let xi = Trivector::new(gaussian_vector(20, &mut rng)).unwrap();
        let ia = induced_map3(&a, anti_a).unwrap();
        let ib = induced_map3(&b, anti_b).unwrap();
        let ab = if anti_a { &a * &b.conj() } else { &a * &b };
        let iab = induced_map3(&ab, anti_a != anti_b).unwrap();
        let lhs = iab.apply(&xi);
        let rhs = ia.apply(&ib.apply(&xi));
        prop_assert!(lhs.coeffs().distance(rhs.coeffs()) < 1e-10 * (1.0 + lhs.coeffs().norm()));
        prop_assert!(ia.compose(&ib).apply(&xi).coeffs().distance(rhs.coeffs()) < 1e-10 * (1.0 + rhs.coeffs().norm()));
    }

    #[test]
    fn contraction_is_sp3_equivariant(seed in any::<u64>()) {
        let cube = ExteriorCube::<f64>::standard().unwrap();
        let mut rng = seeded_rng(seed);
        let g = MatrixLieGroup::<f64>::sp(3).random_element(&mut rng);
        let xi = Trivector::new(gaussian_vector(20, &mut rng)).unwrap();
        let moved = induced_map3(&g, false).unwrap().apply(&xi);
        let lhs = contraction(&cube.omega, &moved).unwrap();
        let rhs = g.mul_vec(&contraction(&cube.omega, &xi).unwrap());
        prop_assert!(lhs.distance(&rhs) < 1e-10 * (1.0 + rhs.norm()));
    }

    #[test]
    fn quadric_angle_is_scale_and_group_invariant(seed in any::<u64>(), c in 0.1f64..10.0, phase in 0.0f64..std::f64::consts::TAU) {
        let q = ComplexQuadric::<f64>::standard(5);
        let z = quadric_base(&q);
        let so5 = MatrixLieGroup::<f64>::so(5);
        let mut rng = seeded_rng(seed);
        let x = so5.random_algebra_element(1.0, &mut rng);
        let w = z.tangent_from_algebra(&q, &x).unwrap();
        prop_assume!(w.norm() > 1e-6);
        let phi = characteristic_angle_quadric(&q, &z, &w).unwrap();
        prop_assert!((0.0..=std::f64::consts::FRAC_PI_4 + 1e-12).contains(&phi));
        let scaled = w.scale(Complex64::from_polar(c, phase));
        prop_assert!((characteristic_angle_quadric(&q, &z, &scaled).unwrap() - phi).abs() < 1e-9);
        let g = so5.random_element(&mut rng);
        let gz = z.transform(&q, &g).unwrap();
        // Transport the tangent vector, then remove the phase picked up by the point.
        let gw = g.mul_vec(&w);
        let gw = gw.axpy(-q.hermitian().eval(&gw, gz.z()).unwrap(), gz.z());
        prop_assert!((characteristic_angle_quadric(&q, &gz, &gw).unwrap() - phi).abs() < 1e-9);
    }

    #[test]
    fn grassmann_angle_is_scale_and_group_invariant(seed in any::<u64>(), c in 0.1f64..10.0) {
        let p = plane(seed);
        let su6 = MatrixLieGroup::<f64>::su(6);
        let mut rng = seeded_rng(seed ^ 0x5eed);
        let x = su6.random_algebra_element(1.0, &mut rng);
        let t = p.tangent_from_algebra(&x).unwrap();
        let phi = characteristic_angle_grassmann(&p, &t).unwrap();
        prop_assert!((characteristic_angle_grassmann(&p, &t.scale(c)).unwrap() - phi).abs() < 1e-9);
        let g = su6.random_element(&mut rng);
        let gp = p.transform(&g).unwrap();
        let gx = &(&g * &x) * &g.adjoint();
        let gt = gp.tangent_from_algebra(&gx).unwrap();
        prop_assert!((characteristic_angle_grassmann(&gp, &gt).unwrap() - phi).abs() < 1e-9);
    }

    #[test]
    fn tangent_map_is_real_linear(seed in any::<u64>(), a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let mut rng = seeded_rng(seed);
        let su6 = MatrixLieGroup::<f64>::su(6);
        let x = su6.random_algebra_element(1.0, &mut rng);
        let y = su6.random_algebra_element(1.0, &mut rng);
        let p = plane(seed);
        let combo = &x.scale_real(a) + &y.scale_real(b);
        let lhs = p.tangent_from_algebra(&combo).unwrap().hom;
        let rhs = &p.tangent_from_algebra(&x).unwrap().hom.scale_real(a) + &p.tangent_from_algebra(&y).unwrap().hom.scale_real(b);
        prop_assert!(lhs.distance(&rhs) < 1e-12);

        let q = ComplexQuadric::<f64>::standard(5);
        let z = quadric_base(&q);
        let so5 = MatrixLieGroup::<f64>::so(5);
        let x = so5.random_algebra_element(1.0, &mut rng);
        let y = so5.random_algebra_element(1.0, &mut rng);
        let combo = &x.scale_real(a) + &y.scale_real(b);
        let lhs = z.tangent_from_algebra(&q, &combo).unwrap();
        let rhs = z.tangent_from_algebra(&q, &x).unwrap().scale_real(a).axpy(Complex64::new(b, 0.0), &z.tangent_from_algebra(&q, &y).unwrap());
        prop_assert!(lhs.distance(&rhs) < 1e-12);
    }

    #[test]
    fn geodesics_stay_in_the_ambient_space(seed in any::<u64>(), t in -7.0f64..7.0, which in 0usize..3) {
        let c = Construction::build(ConstructionId::ALL[which]).unwrap();
        let mut rng = seeded_rng(seed);
        let coef = gaussian_reals::<f64>(c.splitting.m_dim(), &mut rng);
        let n = c.splitting.m_basis[0].rows();
        let d: CMatrix = c.splitting.m_basis.iter().zip(&coef).fold(ComplexMatrix::zeros(n, n), |acc, (b, &s)| &acc + &b.scale_real(s));
        let d = d.scale_real(1.0 / d.frobenius_norm());
        let p = c.geodesic(&c.base, &d, t, 1e-9).unwrap();
        prop_assert!(c.point_residual(&p).unwrap() < 1e-12);
    }
}

#[test]
fn single_precision_core() {
    let cube = ExteriorCube::<f32>::standard().unwrap();
    assert_eq!((cube.kappa_rank, cube.v1.cols()), (6, 14));

    let g = Grassmannian::complex(6).unwrap();
    let p = PlanePoint::<f32>::new(g, &[ComplexVector::basis(6, 0), ComplexVector::basis(6, 1)]).unwrap();
    let s = skewgeo_core::spaces::grassmann_splitting(&p).unwrap();
    assert_eq!((s.k_dim(), s.m_dim()), (19, 16));

    let q = ComplexQuadric::<f32>::standard(5);
    let mut z = ComplexVector::zeros(5);
    z[0] = num_complex::Complex::new(1.0, 0.0);
    z[1] = num_complex::Complex::new(0.0, 1.0);
    let z = QuadricPoint::new(&q, z).unwrap();
    let mut w = ComplexVector::zeros(5);
    w[2] = num_complex::Complex::new(2.0, 0.0);
    w[3] = num_complex::Complex::new(0.0, 1.0);
    let phi = characteristic_angle_quadric(&q, &z, &w).unwrap();
    assert!((phi - 0.5f32.atan()).abs() < 1e-5);
}
