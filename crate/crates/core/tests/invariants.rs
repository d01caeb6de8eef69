use std::f64::consts::PI;

use nikolskii::concave::{build_poly, decompose, is_concave, reconstruct, s_functional, v_basis};
use nikolskii::hardy::{moments, moments_about, DiscreteSeq};
use nikolskii::kernels::{dirichlet, nikolskii_q, nikolskii_q_pairing};
use nikolskii::sharp::{estimate_constant, ratio, SharpOptions};
use nikolskii::trigpoly::{ParityKind, TrigPoly};
use nikolskii::witnesses::exponential_witness;
use nikolskii::Exponent;
use num_complex::Complex64;
use proptest::prelude::*;

fn poly_strategy(max_degree: usize) -> impl Strategy<Value = TrigPoly> {
    (0..=max_degree).prop_flat_map(|n| {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 2 * n + 1)
            .prop_map(|c| TrigPoly::new(c.into_iter().map(|(re, im)| Complex64::new(re, im)).collect()).unwrap())
    })
}

fn nonzero(t: &TrigPoly) -> bool {
    t.coeffs().iter().any(|c| c.norm() > 1e-3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn parseval_holds_on_default_grid(t in poly_strategy(40)) {
        prop_assume!(nonzero(&t));
        let l2 = t.quasinorm(Exponent::Finite(2.0)).unwrap().value;
        let exact = t.parseval_l2_squared();
        prop_assert!((l2 * l2 - exact).abs() <= 1e-9 * exact);
    }

    #[test]
    fn weyl_derivatives_compose(t in poly_strategy(16), s1 in 0.0f64..3.0, s2 in 0.0f64..3.0) {
        let a = t.weyl_derivative(s1).unwrap().weyl_derivative(s2).unwrap();
        let b = t.weyl_derivative(s1 + s2).unwrap();
        let scale = b.max_abs_coeff().max(1.0);
        for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
            prop_assert!((x - y).norm() <= 1e-12 * scale);
        }
    }

    #[test]
    fn parity_projection_is_idempotent(t in poly_strategy(12)) {
        for kind in [ParityKind::Real, ParityKind::Even, ParityKind::Odd] {
            let once = t.parity_project(kind);
            prop_assert_eq!(once.parity_project(kind), once.clone());
            let sup = |u: &TrigPoly| u.quasinorm(Exponent::Infinity).unwrap().value;
            prop_assert!(sup(&once) <= sup(&t) * (1.0 + 1e-9));
        }
    }

    #[test]
    fn ratio_is_scale_invariant(t in poly_strategy(10), lambda in 0.01f64..100.0) {
        prop_assume!(nonzero(&t) && t.degree() > 0);
        let scaled = t.scale(Complex64::new(lambda, 0.0));
        for (s, p, q) in [(1, Exponent::Finite(1.0), Exponent::Infinity), (2, Exponent::Finite(0.5), Exponent::Finite(2.0))] {
            let a = ratio(&t, s, p, q).unwrap();
            let b = ratio(&scaled, s, p, q).unwrap();
            prop_assert!((a - b).abs() <= 1e-12 * a);
        }
    }

    #[test]
    fn translation_preserves_norms(t in poly_strategy(10), a in -PI..PI) {
        let u = t.translate(a);
        // |T| has kinks at its zeros, so p = 1 is only second order in the grid
        for (p, tol) in [(Exponent::Finite(1.0), 1e-5), (Exponent::Finite(2.0), 1e-12), (Exponent::Infinity, 1e-9)] {
            let x = t.quasinorm(p).unwrap().value;
            let y = u.quasinorm(p).unwrap().value;
            prop_assert!((x - y).abs() <= tol * x.max(1e-300));
        }
    }

    #[test]
    fn moments_shift_binomially(vals in prop::collection::vec(-1.0f64..1.0, 1..10), offset in -30i64..30, c in -6i64..6) {
        let a = DiscreteSeq::from_real(offset, &vals);
        let plain = moments(&a, 5);
        let about = moments_about(&a, c as f64, 5);
        for j in 0..=5usize {
            let mut binom = 1.0;
            let mut expanded = Complex64::new(0.0, 0.0);
            for i in 0..=j {
                expanded += plain[i] * binom * (-(c as f64)).powi((j - i) as i32);
                binom = binom * (j - i) as f64 / (i + 1) as f64;
            }
            let scale = 40f64.powi(j as i32) * vals.len() as f64;
            prop_assert!((expanded - about[j]).norm() <= 1e-12 * scale);
        }
    }

    #[test]
    fn concave_round_trip(weights in prop::collection::vec(0.0f64..1.0, 2..40)) {
        let n = weights.len() - 1;
        let c = reconstruct(n, &weights);
        prop_assert!(is_concave(&c).unwrap() || c.iter().all(|&x| x == 0.0));
        let seq = nikolskii::concave::ConcaveSeq::new(c.clone()).unwrap();
        let back = reconstruct(n, &decompose(&seq).unwrap());
        let peak = c.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1e-300);
        for (x, y) in back.iter().zip(&c) {
            prop_assert!((x - y).abs() <= 1e-12 * peak);
        }
    }

    #[test]
    fn q_pairing_matches_coefficients(weights in prop::collection::vec(0.0f64..1.0, 2..30)) {
        let n = weights.len() - 1;
        let seq = nikolskii::concave::ConcaveSeq::new(reconstruct(n, &weights)).unwrap();
        let exact = nikolskii_q_pairing(seq.values());
        let direct = build_poly(&seq).pairing(&nikolskii_q(n));
        prop_assert!((direct.re - exact).abs() <= 1e-12 * exact.abs().max(1.0));
        prop_assert!(direct.im.abs() <= 1e-12 * exact.abs().max(1.0));
    }
}

#[test]
fn dirichlet_norms_are_exact() {
    for n in [1i64, 7, 33, 64] {
        let d = dirichlet(n).unwrap();
        let m = (2 * n + 1) as f64;
        assert!((d.quasinorm(Exponent::Infinity).unwrap().value - m).abs() <= 1e-9 * m);
        assert!((d.quasinorm(Exponent::Finite(2.0)).unwrap().value - (2.0 * PI * m).sqrt()).abs() <= 1e-9 * m);
    }
}

#[test]
fn v_basis_functional_is_positive() {
    for n in [4usize, 16, 64] {
        for l in [0, n / 2, n] {
            assert!(s_functional(&v_basis(n, l).unwrap()) > 0.0);
        }
    }
}

#[test]
fn estimates_dominate_witnesses() {
    let opts = SharpOptions { starts: 8, ..SharpOptions::default() };
    for (n, s) in [(3usize, 1u32), (5, 2)] {
        let p = Exponent::Finite(1.0);
        let q = Exponent::Finite(2.0);
        let est = estimate_constant(n, s, p, q, &opts).unwrap().value;
        let w = exponential_witness(n, s as f64, p, q).unwrap().ratio;
        assert!(est >= w * (1.0 - 1e-9), "n={n} s={s}: {est} < {w}");
    }
}

#[test]
fn estimate_grows_with_degree_at_two_inf() {
    let opts = SharpOptions { starts: 8, ..SharpOptions::default() };
    let mut prev = 0.0;
    for n in 1..=6 {
        let v = estimate_constant(n, 2, Exponent::Finite(2.0), Exponent::Infinity, &opts).unwrap().value;
        assert!(v >= prev - 1e-6);
        prev = v;
    }
}

#[test]
fn translated_starts_agree_at_two_inf() {
    let base = SharpOptions { starts: 8, ..SharpOptions::default() };
    let shifted = SharpOptions { shift: 1.234, ..base.clone() };
    let a = estimate_constant(4, 1, Exponent::Finite(2.0), Exponent::Infinity, &base).unwrap().value;
    let b = estimate_constant(4, 1, Exponent::Finite(2.0), Exponent::Infinity, &shifted).unwrap().value;
    assert!((a - b).abs() <= 1e-6 * a);
}
