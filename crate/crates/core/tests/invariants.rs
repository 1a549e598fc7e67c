use circext::cocycles::{
    cocycle_d, combined_cocycle, pairing_t,
    verify::{cocycle_identity_defect, jacobi_defect, LieCocycle},
};
use circext::corpus::Corpus;
use circext::laurent::{default_grid, exp_series, log_series, winding_number};
use circext::operator::{fredholm_det_lu, fredholm_det_series, Matrix};
use circext::welding::weld;
use circext::{GroupElement, LaurentSeries, LieElement};
use num_complex::Complex64;
use proptest::prelude::*;

fn padded_lie(corpus: &mut Corpus) -> LieElement {
    let x = corpus.lie_element(4);
    LieElement::new(x.s.padded(12), x.r.padded(12))
}

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn group_diff(a: &GroupElement, b: &GroupElement) -> f64 {
    let dd = a.d().max_coeff_diff(b.d());
    let df = a.f().displacement().max_coeff_diff(b.f().displacement());
    dd.max(df)
}

proptest! {
    #![proptest_config(cfg(64))]

    #[test]
    fn split_is_a_projection(seed: u64) {
        let mut corpus = Corpus::new(seed);
        let rho = corpus.rho();
        let a = corpus.series(12, rho);
        let (minus, plus) = a.split();
        prop_assert_eq!(plus.plus_part(), plus.clone());
        prop_assert!(minus.plus_part().is_zero());
        prop_assert!(minus.add(&plus).max_coeff_diff(&a) == 0.0);
    }

    #[test]
    fn winding_is_additive(seed: u64, j in -3i64..=3, k in -3i64..=3) {
        let mut corpus = Corpus::new(seed);
        let a = corpus.unit(16).mul(&LaurentSeries::monomial(j, c(1.0), 16).padded(4)).resized(20);
        let b = corpus.unit(16).mul(&LaurentSeries::monomial(k, c(1.0), 16).padded(4)).resized(20);
        let m = default_grid(40);
        let ab = a.padded(20).mul(&b.padded(20));
        prop_assert_eq!(winding_number(&a, m).unwrap(), j);
        prop_assert_eq!(winding_number(&ab, m).unwrap(), j + k);
    }

    #[test]
    fn exp_inverts_log(seed: u64) {
        let mut corpus = Corpus::new(seed);
        let n = 96;
        let d = corpus.unit(48).resized(n);
        let m = default_grid(n);
        let back = exp_series(&log_series(&d, m).unwrap(), m).unwrap();
        prop_assert!(back.sub(&d).sup_on_grid(m) < 1e-10);
    }

    #[test]
    fn leibniz(seed: u64) {
        let mut corpus = Corpus::new(seed);
        let a = corpus.series(10, 0.5).padded(12);
        let b = corpus.series(10, 0.5).padded(12);
        let lhs = a.mul(&b).derivative();
        let rhs = a.derivative().mul(&b).add(&a.mul(&b.derivative()));
        prop_assert!(lhs.sub(&rhs).sup_on_grid(default_grid(22)) < 1e-10);
    }

    #[test]
    fn bracket_is_antisymmetric_and_satisfies_jacobi(seed: u64) {
        let mut corpus = Corpus::new(seed);
        let (x, y, z) = (padded_lie(&mut corpus), padded_lie(&mut corpus), padded_lie(&mut corpus));
        let xy = x.bracket(&y);
        let yx = y.bracket(&x);
        prop_assert!(xy.s.add(&yx.s).sup_on_grid(65) < 1e-12);
        prop_assert!(xy.r.add(&yx.r).sup_on_grid(65) < 1e-12);
        let j = x.bracket(&y).bracket(&z).add(&y.bracket(&z).bracket(&x)).add(&z.bracket(&x).bracket(&y));
        prop_assert!(j.s.sup_on_grid(129) < 1e-10);
        prop_assert!(j.r.sup_on_grid(129) < 1e-10);
    }

    #[test]
    fn matrix_determinants(seed: u64) {
        let mut corpus = Corpus::new(seed);
        let s = corpus.matrix(10);
        let t = corpus.matrix(10);
        let id = Matrix::identity(10, 10);
        let product = (&id + &s) * (&id + &t) - &id;
        let lhs = fredholm_det_lu(&product).unwrap();
        let rhs = fredholm_det_lu(&s).unwrap() * fredholm_det_lu(&t).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-12);
        let series = fredholm_det_series(&s, 10).unwrap();
        prop_assert!((series - fredholm_det_lu(&s).unwrap()).norm() < 1e-12);
        let p = &id + corpus.matrix(10);
        let p_inv = p.clone().try_inverse().unwrap();
        let similar = &p * &t * &p_inv;
        prop_assert!((fredholm_det_lu(&similar).unwrap() - fredholm_det_lu(&t).unwrap()).norm() < 1e-12);
    }
}

proptest! {
    #![proptest_config(cfg(12))]

    #[test]
    fn group_law(seed: u64) {
        let n = 96;
        let mut corpus = Corpus::new(seed);
        let (g1, g2, g3) = (
            corpus.group_element(48).unwrap().resized(n).unwrap(),
            corpus.group_element(48).unwrap().resized(n).unwrap(),
            corpus.group_element(48).unwrap().resized(n).unwrap(),
        );
        let left = g1.mul(&g2).unwrap().mul(&g3).unwrap();
        let right = g1.mul(&g2.mul(&g3).unwrap()).unwrap();
        prop_assert!(group_diff(&left, &right) < 1e-9);
        let e = g1.mul(&g1.inverse().unwrap()).unwrap();
        prop_assert!(group_diff(&e, &GroupElement::identity(n)) < 1e-10);
        let h = corpus.series(32, 0.5).resized(n);
        let one_step = g1.mul(&g2).unwrap().act(&h).unwrap();
        let two_steps = g1.act(&g2.act(&h).unwrap()).unwrap();
        prop_assert!(one_step.sub(&two_steps).sup_on_grid(default_grid(n)) < 1e-9);
    }

    #[test]
    fn pairing_laws(seed: u64, nf in -2i64..=2, ng in -2i64..=2) {
        let n = 32;
        let m = default_grid(n + 2);
        let mut corpus = Corpus::new(seed);
        let z = |k: i64| LaurentSeries::monomial(k, c(1.0), n + 2);
        let f1 = corpus.unit(n).padded(2).mul(&z(nf));
        let f2 = corpus.unit(n).padded(2);
        let g = corpus.unit(n).padded(2).mul(&z(ng));
        let t = |a: &LaurentSeries, b: &LaurentSeries| pairing_t(a, b, m).unwrap();
        prop_assert!((t(&f1, &g) * t(&g, &f1) - 1.0).norm() < 1e-10);
        let f12 = f1.padded(n).mul(&f2.padded(n));
        let gp = g.padded(n);
        let lhs = pairing_t(&f12, &gp, default_grid(2 * n + 2)).unwrap();
        prop_assert!((lhs / (t(&f1, &g) * t(&f2, &g)) - 1.0).norm() < 1e-10);
    }

    #[test]
    fn pairing_is_diffeomorphism_invariant(seed: u64) {
        let n = 48;
        let mut corpus = Corpus::new(seed);
        let f = corpus.unit(16).resized(n);
        let g = corpus.unit(16).resized(n);
        let psi = GroupElement::diffeo(corpus.diffeo(n));
        let m = default_grid(n);
        let direct = pairing_t(&f, &g, m).unwrap();
        let moved = pairing_t(&psi.transport(&f).unwrap(), &psi.transport(&g).unwrap(), m).unwrap();
        prop_assert!((moved / direct - 1.0).norm() < 1e-9);
    }

    #[test]
    fn lie_cocycles_are_cocycles(seed: u64) {
        let n = 32;
        let mut corpus = Corpus::new(seed);
        let (x, y, z) = (padded_lie(&mut corpus), padded_lie(&mut corpus), padded_lie(&mut corpus));
        for cocycle in LieCocycle::ALL {
            let scale = 1.0 + cocycle.eval(&x, &y, n).norm();
            let anti = cocycle.eval(&x, &y, n) + cocycle.eval(&y, &x, n);
            prop_assert!(anti.norm() < 1e-10 * scale, "{:?}", cocycle);
            prop_assert!(jacobi_defect(cocycle, &x, &y, &z, n) < 1e-9, "{:?}", cocycle);
        }
    }

    #[test]
    fn welding_residual(seed: u64) {
        let n = 64;
        let mut corpus = Corpus::new(seed);
        let f = corpus.diffeo(n);
        let w = weld(&f, n, default_grid(n)).unwrap();
        prop_assert!(w.residual < 1e-8);
        prop_assert!(w.v_plus.coeff(0).norm() == 0.0);
    }
}

proptest! {
    #![proptest_config(cfg(6))]

    #[test]
    fn group_cocycles_satisfy_the_cocycle_identity(seed: u64) {
        let n = 48;
        let mut corpus = Corpus::new(seed);
        let (g1, g2, g3) = (
            corpus.group_element(n).unwrap(),
            corpus.group_element(n).unwrap(),
            corpus.group_element(n).unwrap(),
        );
        let d = cocycle_identity_defect(|a, b| cocycle_d(a, b, n), &g1, &g2, &g3).unwrap();
        prop_assert!(d < 1e-7, "D defect {}", d);
        let cc = cocycle_identity_defect(combined_cocycle, &g1, &g2, &g3).unwrap();
        prop_assert!(cc < 1e-7, "C defect {}", cc);
    }
}
