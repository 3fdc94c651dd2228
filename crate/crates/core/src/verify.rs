//! Invariant suite over all modules, reported check by check.

use std::f64::consts::PI;
use std::fmt;

use crate::kernels::{
    j_alpha, j_alpha_quadrature, j_alpha_series, phi_alpha_fox, xi_zero_limit, FoxH, FoxH2132Params, KernelError,
    KernelEvalPolicy,
};
use crate::numcore::{cot_pi, mittag_leffler};
use crate::pvquad::pv_integrate;
use crate::scattering::{
    alpha2_oracles, delta_rt, double_delta_rt_with, u_scale, zero_energy_double, zero_energy_single, zero_energy_t,
    PhysicalParams, ScatteringError,
};
use crate::wavefield::{bc_residual_with, psi_at_with, solve_left_incidence_with, WaveError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    NonConvergence,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerifyReport {
    pub results: Vec<CheckResult>,
}

impl VerifyReport {
    /// 0 when everything passed, 1 on any failure, otherwise 2 on non-convergence.
    pub fn exit_code(&self) -> i32 {
        if self.results.iter().any(|r| r.status == CheckStatus::Fail) {
            1
        } else if self.results.iter().any(|r| r.status == CheckStatus::NonConvergence) {
            2
        } else {
            0
        }
    }

    pub fn all_passed(&self) -> bool {
        self.exit_code() == 0
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            let tag = match r.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::NonConvergence => "NONCONV",
            };
            writeln!(f, "{tag:8} {:40} {}", r.name, r.detail)?;
        }
        Ok(())
    }
}

enum CheckError {
    NonConvergence(String),
    Other(String),
}

impl From<KernelError> for CheckError {
    fn from(e: KernelError) -> Self {
        match e {
            KernelError::NonConvergence { .. } => CheckError::NonConvergence(e.to_string()),
            _ => CheckError::Other(e.to_string()),
        }
    }
}

impl From<ScatteringError> for CheckError {
    fn from(e: ScatteringError) -> Self {
        match e {
            ScatteringError::Kernel(k) => k.into(),
            _ => CheckError::Other(e.to_string()),
        }
    }
}

impl From<WaveError> for CheckError {
    fn from(e: WaveError) -> Self {
        match e {
            WaveError::Kernel(k) => k.into(),
            WaveError::Scattering(s) => s.into(),
            _ => CheckError::Other(e.to_string()),
        }
    }
}

type Outcome = Result<(bool, String), CheckError>;

type Check<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

/// Settings for [`run_all`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    /// Quadrature accuracy for kernel evaluations.
    pub tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { tol: 1e-10 }
    }
}

fn worst(label: &str, v: f64, limit: f64) -> (bool, String) {
    (v <= limit, format!("{label} = {v:.3e} (limit {limit:.0e})"))
}

fn check_pv_closed_form(cfg: &VerifyConfig) -> Outcome {
    let one = |_q: f64| 1.0;
    let mut max_err: f64 = 0.0;
    for i in 0..50 {
        let alpha = 1.05 + 0.95 * (i as f64 + 1.0) / 50.0;
        let r = pv_integrate(&one, alpha, 0.0, cfg.tol, false).map_err(|e| CheckError::Other(e.to_string()))?;
        if !r.converged {
            return Err(CheckError::NonConvergence(format!("alpha = {alpha}")));
        }
        max_err = max_err.max((r.value + PI / alpha * cot_pi(1.0 / alpha)).abs());
    }
    Ok(worst("max error", max_err, 10.0 * cfg.tol))
}

fn check_kernel_closed_forms(p: &KernelEvalPolicy) -> Outcome {
    let mut e0: f64 = 0.0;
    for i in 0..50 {
        let alpha = 1.05 + 0.95 * (i as f64 + 1.0) / 50.0;
        e0 = e0.max((j_alpha(0.0, alpha, p)? + cot_pi(1.0 / alpha) / alpha).abs());
    }
    let mut e2: f64 = 0.0;
    for i in 0..100 {
        let w = 20.0 * i as f64 / 99.0;
        e2 = e2.max((j_alpha(w, 2.0, p)? + 0.5 * w.sin()).abs());
    }
    let ok = e0 <= 1e-12 && e2 <= 1e-8;
    Ok((ok, format!("J(0) error {e0:.1e}, alpha = 2 error {e2:.1e}")))
}

fn check_kernel_symmetry(p: &KernelEvalPolicy) -> Outcome {
    let mut ok = true;
    for (w, alpha) in [(3.7, 1.8), (0.02, 1.3), (12.0, 1.5), (70.0, 1.9)] {
        ok &= j_alpha(w, alpha, p)? == j_alpha(-w, alpha, p)?;
    }
    Ok((ok, "J even at sampled points".into()))
}

fn check_series_routes(p: &KernelEvalPolicy) -> Outcome {
    let mut max_err: f64 = 0.0;
    for alpha in [1.2, 1.7, 1.9] {
        for w in [0.005, 0.02, 0.05] {
            let s = j_alpha_series(w, alpha)?;
            max_err = max_err.max((s - j_alpha_quadrature(w, alpha, p.tol)?).abs());
        }
    }
    Ok(worst("series vs quadrature", max_err, 1e-6))
}

fn check_fox_route(p: &KernelEvalPolicy) -> Outcome {
    let mut max_err: f64 = 0.0;
    for alpha in [1.2, 1.5, 1.8] {
        for w in [0.1, 0.5, 1.0] {
            let fox = phi_alpha_fox(w, alpha, 40)?;
            max_err = max_err.max((fox + 2.0 * alpha * j_alpha_quadrature(w, alpha, p.tol)?).abs());
        }
    }
    Ok(worst("Fox vs quadrature", max_err, 1e-6))
}

fn check_fox_properties() -> Outcome {
    let h = FoxH2132Params::new(1.6, true, 0.2)?.to_fox();
    let p1 = (h.series(0.2, 40)?.value - 2.0 * h.with_power_argument(2.0).series(0.04, 40)?.value).abs();
    let h = FoxH2132Params::new(1.6, true, 0.3)?.to_fox();
    let p2 = (0.3 * h.series(0.3, 40)?.value - h.multiplied_by_power(1.0).series(0.3, 40)?.value).abs();
    let mu = 1.8;
    let g = FoxH::new(2, 1, vec![(1.0, 1.0), (1.0, mu)], vec![(1.6, 1.6), (1.0, 1.0), (1.0, 1.0)])?;
    let low = g.lowered().ok_or_else(|| CheckError::Other("lowering not applicable".into()))?;
    let p3 = (g.series(0.5, 40)?.value - low.series(0.5, 40)?.value).abs();
    let mut ml: f64 = 0.0;
    for w in [0.25_f64, 0.5, 1.0] {
        let hv = FoxH2132Params::new(2.0, true, w * w)?.to_fox().series(w * w, 40)?.value;
        let e = mittag_leffler(2.0, 2.0, -w * w).map_err(KernelError::from)?;
        ml = ml.max((hv - w * w.sin()).abs()).max((hv - w * w * e).abs());
    }
    let m = p1.max(p2).max(p3).max(ml);
    Ok(worst("max property defect", m, 1e-10))
}

fn check_xi_limit(p: &KernelEvalPolicy) -> Outcome {
    let mut max_err: f64 = 0.0;
    for alpha in [1.3, 1.7, 2.0] {
        max_err = max_err.max((xi_zero_limit(alpha, p)? - 0.5 * PI).abs());
    }
    Ok(worst("Xi(0+) - pi/2", max_err, 1e-3))
}

fn check_single_delta(p: &KernelEvalPolicy) -> Outcome {
    let _ = p;
    let mut unit: f64 = 0.0;
    let mut oracle: f64 = 0.0;
    let mut monotone = true;
    for alpha in [1.2, 1.5, 1.8, 2.0] {
        let params = PhysicalParams::natural(alpha, 10.0);
        let u = u_scale(&params).unwrap_or(1.0);
        let mut last = -1.0;
        for i in 0..50 {
            let e = u * 10f64.powf(-3.0 + 6.0 * i as f64 / 49.0);
            let a = delta_rt(&params, e)?;
            unit = unit.max(a.unitarity_defect().abs());
            monotone &= a.trans >= last;
            last = a.trans;
            if alpha == 2.0 {
                oracle = oracle.max((a.trans - alpha2_oracles(&params.with_r_sep(1.0), e)?.0).abs());
            }
        }
    }
    let ok = unit <= 1e-12 && oracle <= 1e-6 && monotone;
    Ok((ok, format!("unitarity {unit:.1e}, alpha = 2 oracle {oracle:.1e}, monotone {monotone}")))
}

fn check_double_delta(p: &KernelEvalPolicy) -> Outcome {
    let mut unit: f64 = 0.0;
    let mut routes: f64 = 0.0;
    let mut ident: f64 = 0.0;
    for ia in 0..5 {
        let alpha = 1.15 + 0.2 * ia as f64;
        for mu in [0.5, 1.0, 2.0, -0.7] {
            for ie in 0..5 {
                let e = 10f64.powf(-3.0 + 1.2 * ie as f64);
                let params = PhysicalParams::natural(alpha, 6.0).with_mu(mu).with_r_sep(1.0);
                let (a, int) = double_delta_rt_with(&params, e, p)?;
                unit = unit.max(a.unitarity_defect().abs());
                routes = routes.max((a.trans - int.t_final).abs());
                if int.w_det.abs() > 1e-12 && int.p_identity != 0.0 {
                    ident = ident.max(((int.p_direct - int.p_identity) / int.p_identity).abs());
                }
            }
        }
    }
    let mut galindo: f64 = 0.0;
    let params = PhysicalParams::natural(2.0, 10.0).with_r_sep(1.0);
    for i in 1..=100 {
        let e = params.energy_at(4.0 * PI * i as f64 / 100.0);
        let t = double_delta_rt_with(&params, e, p)?.0.trans;
        galindo = galindo.max((t - alpha2_oracles(&params, e)?.1).abs());
    }
    let mut reduction: f64 = 0.0;
    for (alpha, mu) in [(1.7, 0.5), (1.3, 2.0)] {
        let params = PhysicalParams::natural(alpha, 1.0).with_mu(mu);
        let dd = double_delta_rt_with(&params, 1.0, p)?.0;
        let s = delta_rt(&params.with_v0(1.0 + mu), 1.0)?;
        reduction = reduction.max((dd.r - s.r).norm()).max((dd.t - s.t).norm());
    }
    let ok = unit <= 1e-12 && routes <= 1e-10 && ident <= 1e-10 && galindo <= 1e-6 && reduction <= 1e-8;
    Ok((
        ok,
        format!(
            "unitarity {unit:.1e}, routes {routes:.1e}, identity {ident:.1e}, Galindo {galindo:.1e}, R->0 {reduction:.1e}"
        ),
    ))
}

fn check_zero_energy(p: &KernelEvalPolicy) -> Outcome {
    let mut max_err: f64 = 0.0;
    for alpha in [1.2, 1.5, 1.8] {
        let t0 = zero_energy_single(&PhysicalParams::natural(alpha, 10.0))?;
        max_err = max_err.max((t0 - zero_energy_t(alpha)?).abs());
    }
    for alpha in [1.4, 1.8] {
        for mu in [0.5, 1.0, 2.0] {
            let params = PhysicalParams::natural(alpha, 20.0).with_mu(mu).with_r_sep(1.0);
            max_err = max_err.max((zero_energy_double(&params, p)? - zero_energy_t(alpha)?).abs());
        }
    }
    Ok(worst("|T(0) - cos^2(pi/alpha)|", max_err, 1e-3))
}

fn check_wavefield(p: &KernelEvalPolicy) -> Outcome {
    let mut cont: f64 = 0.0;
    for i in 0..20 {
        let alpha = 1.1 + 0.9 * (i % 10) as f64 / 9.0;
        let e = [0.2, 1.0, 3.5, 0.05][i % 4];
        let r = if i >= 10 { 1.0 } else { 0.0 };
        let params = PhysicalParams::natural(alpha, 2.0).with_r_sep(r).with_mu(0.7);
        let sol = solve_left_incidence_with(&params, e, p)?;
        for t in &sol.terms {
            let l = psi_at_with(&params, e, t.center - 1e-12, &sol, p)?;
            let rr = psi_at_with(&params, e, t.center + 1e-12, &sol, p)?;
            cont = cont.max((l - rr).norm());
        }
    }
    let mut bc: f64 = 0.0;
    for (alpha, e, v0) in [(1.2, 0.5, 1.0), (1.5, 1.0, -1.0), (1.8, 1.0, 1.0), (2.0, 1.0, 1.0), (1.7, 2.0, -1.0)] {
        bc = bc.max(bc_residual_with(&PhysicalParams::natural(alpha, v0), e, p)?);
    }
    let ok = cont <= 1e-9 && bc <= 1e-8;
    Ok((ok, format!("continuity {cont:.1e}, boundary residual {bc:.1e}")))
}

/// Run every check with kernel accuracy `cfg.tol`.
pub fn run_all(cfg: &VerifyConfig) -> VerifyReport {
    let policy = KernelEvalPolicy::with_tol(cfg.tol);
    let mut report = VerifyReport::default();
    if let Err(e) = policy.validate() {
        report.results.push(CheckResult { name: "configuration", status: CheckStatus::Fail, detail: e.to_string() });
        return report;
    }
    let checks: Vec<Check> = vec![
        ("pv closed form", Box::new(|| check_pv_closed_form(cfg))),
        ("kernel closed forms", Box::new(|| check_kernel_closed_forms(&policy))),
        ("kernel evenness", Box::new(|| check_kernel_symmetry(&policy))),
        ("series vs quadrature", Box::new(|| check_series_routes(&policy))),
        ("Fox route vs quadrature", Box::new(|| check_fox_route(&policy))),
        ("Fox properties", Box::new(check_fox_properties)),
        ("Xi zero limit", Box::new(|| check_xi_limit(&policy))),
        ("single delta", Box::new(|| check_single_delta(&policy))),
        ("double delta", Box::new(|| check_double_delta(&policy))),
        ("zero-energy transmission", Box::new(|| check_zero_energy(&policy))),
        ("wave function", Box::new(|| check_wavefield(&policy))),
    ];
    for (name, check) in checks {
        let (status, detail) = match check() {
            Ok((true, d)) => (CheckStatus::Pass, d),
            Ok((false, d)) => (CheckStatus::Fail, d),
            Err(CheckError::NonConvergence(d)) => (CheckStatus::NonConvergence, d),
            Err(CheckError::Other(d)) => (CheckStatus::Fail, d),
        };
        report.results.push(CheckResult { name, status, detail });
    }
    report
}
