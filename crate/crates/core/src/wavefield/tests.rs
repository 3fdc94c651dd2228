use super::*;
use crate::scattering::{alpha2_oracles, delta_rt, double_delta_rt, u_scale};

fn quad_policy() -> KernelEvalPolicy {
    // keep far stations on the quadrature route
    KernelEvalPolicy { w_large: 1e6, ..KernelEvalPolicy::default() }
}

#[test]
fn single_alpha_two_half_transmission() {
    let p = PhysicalParams::natural(2.0, 1.0);
    let u = u_scale(&p).unwrap();
    let sol = solve_left_incidence(&p, u).unwrap();
    assert!((sol.reflection().norm_sqr() - 0.5).abs() < 1e-14);
    assert!((sol.transmission().norm_sqr() - 0.5).abs() < 1e-14);
}

#[test]
fn normalization_and_amplitudes() {
    for (alpha, v0, mu, r, e) in [
        (1.5, 1.0, 1.0, 0.0, 0.3),
        (1.8, -1.0, 1.0, 0.0, 2.0),
        (1.3, 3.0, 0.5, 1.0, 0.7),
        (1.9, 10.0, 2.0, 2.5, 4.0),
        (2.0, 5.0, 1.0, 1.0, 1.1),
    ] {
        let p = PhysicalParams::natural(alpha, v0).with_mu(mu).with_r_sep(r);
        let sol = solve_left_incidence(&p, e).unwrap();
        assert!((sol.far_left.0 - 1.0).norm() < 1e-12);
        assert!(sol.far_right.1.norm() < 1e-12);
        let a = if r > 0.0 { double_delta_rt(&p, e).unwrap().0 } else { delta_rt(&p, e).unwrap() };
        assert!((sol.far_left.1 - a.r).norm() < 1e-10, "α = {alpha}");
        assert!((sol.far_right.0 - a.t).norm() < 1e-10, "α = {alpha}");
        if let Some((m1, m2)) = sol.m {
            assert!((sol.c1 + m1 - sol.far_left.0).norm() < 1e-10);
            assert!((sol.c2 + m2 - sol.far_left.1).norm() < 1e-10);
            assert!((sol.c1 - m1 - sol.far_right.0).norm() < 1e-10);
            assert!((sol.c2 - m2 - sol.far_right.1).norm() < 1e-10);
        }
    }
}

#[test]
fn double_alpha_two_matches_galindo_reflection() {
    let p = PhysicalParams::natural(2.0, 10.0).with_r_sep(1.0);
    for mu0 in [0.3, 1.0, 2.2, 4.0, 6.0] {
        let e = p.energy_at(2.0 * mu0);
        let sol = solve_left_incidence(&p, e).unwrap();
        let (_, t) = alpha2_oracles(&p, e).unwrap();
        assert!((sol.reflection().norm_sqr() - (1.0 - t)).abs() < 1e-8, "μ₀ = {mu0}");
    }
}

#[test]
fn continuity_at_centres() {
    let h = 1e-12;
    for i in 0..20 {
        let alpha = 1.1 + 0.9 * (i % 10) as f64 / 9.0;
        let e = [0.2, 1.0, 3.5, 0.05][i % 4];
        let double = i >= 10;
        let p = PhysicalParams::natural(alpha, 2.0).with_r_sep(if double { 1.0 } else { 0.0 }).with_mu(0.7);
        let sol = solve_left_incidence(&p, e).unwrap();
        for t in &sol.terms {
            let l = psi_at(&p, e, t.center - h, &sol).unwrap();
            let r = psi_at(&p, e, t.center + h, &sol).unwrap();
            assert!((l - r).norm() < 1e-9, "α = {alpha}, E = {e}, centre {}", t.center);
        }
    }
}

#[test]
fn value_at_origin() {
    let p = PhysicalParams::natural(1.8, 1.0);
    let e = 1.0;
    let sol = solve_left_incidence(&p, e).unwrap();
    let psi0 = psi_at(&p, e, 0.0, &sol).unwrap();
    let sc = scales_from(&p, e).unwrap();
    let omega = 1.0 / inverse_omega(&p, e).unwrap();
    let want = p.hbar.powf(p.alpha) * p.d_alpha / p.v0
        * p.alpha
        * (sol.c1 + sol.c2)
        * omega
        * (sc.lambda / p.hbar).powf(p.alpha - 1.0);
    assert!((psi0 - want).norm() < 1e-9);
}

#[test]
fn far_field_plane_waves() {
    let p = PhysicalParams::natural(1.5, 1.0);
    let e = 0.8;
    let pol = quad_policy();
    let sol = solve_left_incidence(&p, e).unwrap();
    let r = delta_rt(&p, e).unwrap().r;
    let x = -200.0 / sol.k;
    let psi = psi_at_with(&p, e, x, &sol, &pol).unwrap();
    let plane = Complex64::from_polar(1.0, sol.k * x) + r * Complex64::from_polar(1.0, -sol.k * x);
    assert!((psi - plane).norm() <= 0.02, "{}", (psi - plane).norm());
}

#[test]
fn projection_recovers_amplitudes() {
    let pol = quad_policy();
    for (alpha, r_sep) in [(1.5, 0.0), (1.8, 0.0), (1.4, 1.0), (1.7, 2.0)] {
        let p = PhysicalParams::natural(alpha, 3.0).with_r_sep(r_sep).with_mu(1.5);
        let e = 0.6;
        let sol = solve_left_incidence(&p, e).unwrap();
        let ((a, b), (c, d)) = project_far_field(&p, e, &sol, FAR_FIELD_STATION, &pol).unwrap();
        let amp = if r_sep > 0.0 { double_delta_rt(&p, e).unwrap().0 } else { delta_rt(&p, e).unwrap() };
        assert!((a - 1.0).norm() < 0.05 && d.norm() < 0.05, "α = {alpha}");
        assert!((b / a - amp.r).norm() < 0.05, "α = {alpha}");
        assert!((c / a - amp.t).norm() < 0.05, "α = {alpha}");
    }
}

#[test]
fn boundary_condition_sample() {
    let cases = [
        (1.2, 0.5, 1.0),
        (1.3, 1.0, 2.0),
        (1.4, 3.0, 1.0),
        (1.5, 1.0, -1.0),
        (1.6, 0.1, 5.0),
        (1.7, 2.0, -1.0),
        (1.8, 1.0, 1.0),
        (1.9, 7.0, 0.5),
        (2.0, 1.0, 1.0),
        (1.75, 0.3, -1.0),
    ];
    for (alpha, e, v0) in cases {
        let p = PhysicalParams::natural(alpha, v0);
        let res = bc_residual(&p, e).unwrap();
        assert!(res <= 1e-8, "α = {alpha}, E = {e}, V₀ = {v0}: {res:e}");
    }
}

#[test]
fn alpha_two_jump_by_finite_differences() {
    // standard delta: ψ'(0⁺) − ψ'(0⁻) = (V₀/(ħ²D₂)) ψ(0)
    let p = PhysicalParams { hbar: 1.0, d_alpha: 0.5, ..PhysicalParams::natural(2.0, 1.7) };
    let e = 0.9;
    let sol = solve_left_incidence(&p, e).unwrap();
    let f = |x: f64| psi_at(&p, e, x, &sol).unwrap();
    let h = 1e-5;
    let right = (f(2.0 * h) - f(h)) / h;
    let left = (f(-h) - f(-2.0 * h)) / h;
    // one-sided differences are first order; extrapolate with a second pair
    let right2 = (f(4.0 * h) - f(2.0 * h)) / (2.0 * h);
    let left2 = (f(-2.0 * h) - f(-4.0 * h)) / (2.0 * h);
    let jump = 2.0 * (right - left) - (right2 - left2);
    let want = p.v0 / (p.hbar * p.hbar * p.d_alpha) * f(0.0);
    assert!((jump - want).norm() < 1e-6 * want.norm(), "{jump} vs {want}");
}

#[test]
fn rejects_mismatched_energy() {
    let p = PhysicalParams::natural(1.6, 1.0);
    let sol = solve_left_incidence(&p, 1.0).unwrap();
    assert!(psi_at(&p, 2.0, 0.3, &sol).is_err());
}
