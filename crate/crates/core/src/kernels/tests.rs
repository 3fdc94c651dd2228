use super::*;
use crate::numcore::mittag_leffler;
use proptest::prelude::*;

fn policy() -> KernelEvalPolicy {
    KernelEvalPolicy::default()
}

#[test]
fn policy_validation() {
    assert!(policy().validate().is_ok());
    assert!(KernelEvalPolicy { w_small: 1.0, w_large: 0.5, ..policy() }.validate().is_err());
    assert!(KernelEvalPolicy::with_tol(1e-15).validate().is_err());
    assert!(KernelEvalPolicy::with_tol(1e-5).validate().is_err());
    assert!(KernelEvalPolicy { series_terms: 0, ..policy() }.validate().is_err());
}

#[test]
fn j_zero_examples() {
    let j = j_alpha(0.0, 1.5, &policy()).unwrap();
    assert!((j - 2.0 / (3.0 * 3f64.sqrt())).abs() < 1e-12);
    assert!((j - 0.384_900_179_5).abs() < 1e-10);
}

#[test]
fn j_zero_over_alpha_grid() {
    for i in 0..50 {
        let alpha = 1.05 + 0.95 * (i as f64 + 1.0) / 50.0;
        let j = j_alpha(0.0, alpha, &policy()).unwrap();
        let want = -(PI / alpha).cos() / (PI / alpha).sin() / alpha;
        assert!((j - want).abs() <= 1e-12, "α = {alpha}");
    }
}

#[test]
fn alpha_two_closed_form() {
    assert!((j_alpha(0.5 * PI, 2.0, &policy()).unwrap() + 0.5).abs() < 1e-10);
    for i in 0..100 {
        let w = 20.0 * i as f64 / 99.0;
        let j = j_alpha(w, 2.0, &policy()).unwrap();
        assert!((j + 0.5 * w.sin()).abs() <= 1e-8, "w = {w}: {j}");
    }
}

#[test]
fn evenness_example() {
    let a = j_alpha(3.7, 1.8, &policy()).unwrap();
    let b = j_alpha(-3.7, 1.8, &policy()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn series_against_quadrature() {
    for alpha in [1.2, 1.7, 1.9] {
        for w in [0.001, 0.01, 0.03, 0.05] {
            let s = j_alpha_series(w, alpha).unwrap();
            let q = j_alpha_quadrature(w, alpha, 1e-12).unwrap();
            assert!((s - q).abs() <= 1e-6, "α = {alpha}, w = {w}: {s} vs {q}");
            assert!((s - q).abs() <= 1e-10, "α = {alpha}, w = {w}: {s} vs {q}");
        }
    }
    let s = j_alpha_series(0.01, 1.8).unwrap();
    let q = j_alpha_quadrature(0.01, 1.8, 1e-12).unwrap();
    assert!((s - q).abs() <= 1e-8);
}

#[test]
fn series_at_zero_and_alpha_two() {
    assert_eq!(j_alpha_series(0.0, 1.3).unwrap(), j_alpha_zero(1.3).unwrap());
    for w in [0.01, 0.05, 0.1] {
        assert!((j_alpha_series(w, 2.0).unwrap() + 0.5 * f64::sin(w)).abs() < 1e-15);
    }
}

#[test]
fn series_refuses_near_singular_alpha() {
    assert!(matches!(j_alpha_series(0.05, 1.5), Err(KernelError::SeriesSingular { .. })));
    assert!(matches!(j_alpha_series(0.05, 1.5 + 5e-5), Err(KernelError::SeriesSingular { .. })));
    // the log term at w⁶ for α = 1.4 is retained at w = 0.05
    assert!(j_alpha_series(0.05, 1.4).is_err());
    assert!(j_alpha_series(0.2, 1.3).is_err());
}

#[test]
fn dispatcher_falls_back_to_quadrature() {
    let before = series_fallback_count();
    let j = j_alpha(0.02, 1.5, &policy()).unwrap();
    assert!(series_fallback_count() > before);
    let q = j_alpha_quadrature(0.02, 1.5, 1e-12).unwrap();
    assert!((j - q).abs() < 1e-9);
}

#[test]
fn three_term_expansion_misses_the_next_fractional_power() {
    // leading − exact ≈ −w^(2α−1)/(2Γ(2α)cos πα) to within O(w^(3α−1)) and O(w⁴)
    for alpha in [1.2, 1.7] {
        let w: f64 = 0.05;
        let lead = j_alpha_leading(w, alpha).unwrap();
        let exact = j_alpha_quadrature(w, alpha, 1e-12).unwrap();
        let missing = w.powf(2.0 * alpha - 1.0) / (2.0 * gamma(2.0 * alpha).value * (PI * alpha).cos());
        let rest = w.powf(3.0 * alpha - 1.0) + w.powi(4);
        assert!((lead - exact + missing).abs() < 10.0 * rest, "α = {alpha}");
        assert!((lead - exact).abs() > 0.1 * missing.abs());
    }
    assert!(j_alpha_leading(0.01, 1.5).is_err());
}

#[test]
fn asymptotic_regime() {
    for w in [10.0, 33.0, 71.5] {
        assert_eq!(j_alpha_asymptotic(w, 2.0).unwrap(), -f64::sin(w) / 2.0);
    }
    assert!(j_alpha_asymptotic(5.0, 1.5).is_err());
    let dev = |w: f64| (j_alpha_quadrature(w, 1.5, 1e-12).unwrap() - j_alpha_asymptotic(w, 1.5).unwrap()).abs();
    let (d25, d50, d100) = (dev(25.0), dev(50.0), dev(100.0));
    assert!(d50 < d25 && d100 < d50, "{d25:e} {d50:e} {d100:e}");
    assert!(d100 < 1e-3);
}

#[test]
fn xi_examples() {
    let p = policy();
    let a = xi_alpha(2.0, 1.7, &p).unwrap();
    assert_eq!(xi_alpha(-2.0, 1.7, &p).unwrap(), -a);
    assert!((xi_alpha(PI, 2.0, &p).unwrap() + 0.5 * PI).abs() < 1e-9);
    assert!(xi_alpha(0.0, 1.7, &p).is_err());
    for alpha in [1.3, 1.7, 2.0] {
        let lim = xi_zero_limit(alpha, &p).unwrap();
        assert!((lim - 0.5 * PI).abs() < 1e-3, "α = {alpha}: {lim}");
    }
}

#[test]
fn xi_alpha_two_against_cosine() {
    // PV ∫ q sin(wq)/(q²−1) dq = (π/2) cos w
    for w in [0.1, 1.0, 2.5, 9.0] {
        let x = xi_alpha(w, 2.0, &policy()).unwrap();
        assert!((x - 0.5 * PI * f64::cos(w)).abs() < 1e-9, "w = {w}");
    }
}

#[test]
fn phi_examples() {
    let p = policy();
    for w in [0.0, 0.3, 2.0, 7.5] {
        assert!((phi_alpha(w, 2.0, &p).unwrap() - 2.0 * f64::sin(w)).abs() < 1e-8);
    }
    for alpha in [1.2, 1.5, 1.9] {
        let want = 2.0 / (PI / alpha).tan();
        assert!((phi_alpha(0.0, alpha, &p).unwrap() - want).abs() < 1e-12);
    }
    assert!(phi_alpha(-1.0, 1.5, &p).is_err());
    let dev = |w: f64| (phi_alpha(w, 1.6, &p).unwrap() - 2.0 * f64::sin(w)).abs();
    let (d20, d40, d80) = (dev(20.0), dev(40.0), dev(80.0));
    assert!(d40 < d20 && d80 < d40, "{d20:e} {d40:e} {d80:e}");
}

#[test]
fn fox_route_against_quadrature() {
    for alpha in [1.2, 1.5, 1.8] {
        for w in [0.05, 0.2, 0.5, 0.8, 1.0] {
            let fox = phi_alpha_fox(w, alpha, 40).unwrap();
            let quad = -2.0 * alpha * j_alpha_quadrature(w, alpha, 1e-12).unwrap();
            assert!((fox - quad).abs() <= 1e-6, "α = {alpha}, w = {w}: {fox} vs {quad}");
            assert!((fox - quad).abs() <= 1e-9, "α = {alpha}, w = {w}: {fox} vs {quad}");
        }
    }
    assert!((phi_alpha_fox(0.5, 2.0, 40).unwrap() - 2.0 * f64::sin(0.5)).abs() < 1e-12);
}

#[test]
fn fox_power_argument_property() {
    let h = FoxH2132Params::new(1.6, true, 0.2).unwrap().to_fox();
    let g = h.with_power_argument(2.0);
    let lhs = h.series(0.2, 40).unwrap().value;
    let rhs = 2.0 * g.series(0.04, 40).unwrap().value;
    assert!((lhs - rhs).abs() <= 1e-10, "{lhs} vs {rhs}");
}

#[test]
fn fox_shift_property() {
    for plus in [true, false] {
        let h = FoxH2132Params::new(1.6, plus, 0.3).unwrap().to_fox();
        let g = h.multiplied_by_power(1.0);
        let lhs = 0.3 * h.series(0.3, 40).unwrap().value;
        let rhs = g.series(0.3, 40).unwrap().value;
        assert!((lhs - rhs).abs() <= 1e-10, "{lhs} vs {rhs}");
    }
}

#[test]
fn fox_lowering_property_generic() {
    let mu = 0.5 * (2.0 + 1.6);
    let h = FoxH::new(2, 1, vec![(1.0, 1.0), (1.0, mu)], vec![(1.6, 1.6), (1.0, 1.0), (1.0, 1.0)]).unwrap();
    let low = h.lowered().expect("a₁ = b_q");
    assert_eq!((low.m, low.n, low.a.len(), low.b.len()), (2, 0, 1, 2));
    for z in [0.1, 0.5, 1.0] {
        let a = h.series(z, 40).unwrap().value;
        let b = low.series(z, 40).unwrap().value;
        assert!((a - b).abs() <= 1e-10, "z = {z}: {a} vs {b}");
    }
    assert!(FoxH2132Params::new(1.6, true, 0.0).unwrap().to_fox().lowered().is_none());
}

#[test]
fn fox_mittag_leffler_identity() {
    for w in [0.25_f64, 0.5, 1.0] {
        let z = w * w;
        let p = FoxH2132Params::new(2.0, true, z).unwrap();
        let h = foxh_2132_series(p, 40).unwrap();
        assert!((h - w * w.sin()).abs() <= 1e-10);
        assert!((h - z * mittag_leffler(2.0, 2.0, -z).unwrap()).abs() <= 1e-10);
    }
}

#[test]
fn fox_truncation_estimate_shrinks() {
    let h = FoxH2132Params::new(1.7, true, 0.8).unwrap().to_fox();
    let a = h.series(0.8, 10).unwrap();
    let b = h.series(0.8, 30).unwrap();
    assert!(b.truncation_estimate < a.truncation_estimate);
    assert!((a.value - b.value).abs() <= 10.0 * a.truncation_estimate);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn j_is_even(w in -30.0..30.0f64, alpha in 1.05..=2.0f64) {
        let p = KernelEvalPolicy::with_tol(1e-8);
        prop_assert_eq!(j_alpha(w, alpha, &p).unwrap(), j_alpha(-w, alpha, &p).unwrap());
    }

    #[test]
    fn xi_is_odd(w in 0.01..20.0f64, alpha in 1.1..=2.0f64) {
        let p = KernelEvalPolicy::with_tol(1e-8);
        prop_assert_eq!(xi_alpha(-w, alpha, &p).unwrap(), -xi_alpha(w, alpha, &p).unwrap());
    }

    #[test]
    fn series_continuous_across_dispatch(alpha in 1.1..1.95f64) {
        // series and quadrature meet at w_small
        let p = policy();
        let s = j_alpha_series(p.w_small, alpha);
        prop_assume!(s.is_ok());
        let q = j_alpha_quadrature(p.w_small, alpha, 1e-11).unwrap();
        prop_assert!((s.unwrap() - q).abs() < 1e-8);
    }
}
