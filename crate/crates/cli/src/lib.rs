//! CSV sweeps, figure data, kernel tables and the verification command.
//!
//! All commands use natural units `ħ = D_α = 1` and the coupling
//! `V₀ = 2πγ·ħD_α`.

pub mod config;

use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use thiserror::Error;

use fractunnel::kernels::{j_alpha, phi_alpha, xi_alpha, KernelError, KernelEvalPolicy};
use fractunnel::scattering::{
    delta_rt, double_delta_rt_with, u_scale, zero_energy_double, PhysicalParams, ScatteringError,
};
use fractunnel::verify::{run_all, VerifyConfig, VerifyReport};

pub use config::{Mode, RawConfig, Scale, SweepConfig};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Validation(String),
    #[error("I/O error: {0}")]
    Io(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("numerical non-convergence: {0}")]
    NonConvergence(String),
    #[error("numerical error: {0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::NonConvergence(_) => 2,
            _ => 1,
        }
    }
}

impl From<KernelError> for CliError {
    fn from(e: KernelError) -> Self {
        match e {
            KernelError::NonConvergence { .. } => CliError::NonConvergence(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<ScatteringError> for CliError {
    fn from(e: ScatteringError) -> Self {
        match e {
            ScatteringError::Kernel(k) => k.into(),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

/// Allowed `|R + T − 1|` in emitted rows.
pub const UNITARITY_TOL: f64 = 1e-12;

/// A CSV table with one comment line of metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub metadata: String,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.header.iter().position(|h| *h == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {}", self.metadata);
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            // adding 0.0 turns -0 into 0
            let cells: Vec<String> = row.iter().map(|v| format!("{:.16e}", v + 0.0)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn write_to(&self, path: &Path) -> Result<(), CliError> {
        std::fs::write(path, self.to_csv()).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }
}

fn metadata(cfg: &SweepConfig, what: &str) -> String {
    format!(
        "{what}; units hbar = D_alpha = 1; V0 = two_pi_gamma*hbar*D_alpha = {} (V0 > 0 assumed for the figure couplings); mu = {:?}; R = {}",
        cfg.two_pi_gamma, cfg.mu, cfg.r_sep
    )
}

fn policy(cfg: &SweepConfig) -> Result<KernelEvalPolicy, CliError> {
    let p = KernelEvalPolicy::with_tol(cfg.tol);
    p.validate().map_err(|e| CliError::Validation(e.to_string()))?;
    Ok(p)
}

fn check_probabilities(refl: f64, trans: f64, at: &str) -> Result<(), CliError> {
    let in_range = |p: f64| (0.0..=1.0).contains(&p);
    if !in_range(refl) || !in_range(trans) || (refl + trans - 1.0).abs() > UNITARITY_TOL {
        return Err(CliError::Invariant(format!("R = {refl}, T = {trans} at {at}")));
    }
    Ok(())
}

/// `(alpha, x)` pairs in output order.
fn tasks(alphas: &[f64], grid: &[f64]) -> Vec<(f64, f64)> {
    alphas.iter().flat_map(|&a| grid.iter().map(move |&x| (a, x))).collect()
}

/// Single centre over the energy grid: `E,alpha,R,T`.
pub fn run_delta(cfg: &SweepConfig) -> Result<Table, CliError> {
    cfg.validate()?;
    let rows = tasks(&cfg.alpha, &cfg.grid())
        .into_par_iter()
        .map(|(alpha, e)| {
            let a = delta_rt(&PhysicalParams::natural(alpha, cfg.two_pi_gamma), e)?;
            check_probabilities(a.refl, a.trans, &format!("alpha = {alpha}, E = {e}"))?;
            Ok(vec![e, alpha, a.refl, a.trans])
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Table { metadata: metadata(cfg, "single delta"), header: vec!["E", "alpha", "R", "T"], rows })
}

/// Two centres over the energy grid: `E,alpha,mu,R,T`.
pub fn run_double_delta(cfg: &SweepConfig) -> Result<Table, CliError> {
    cfg.validate()?;
    let p = policy(cfg)?;
    let grid = cfg.grid();
    let jobs: Vec<(f64, f64, f64)> =
        cfg.mu.iter().flat_map(|&mu| tasks(&cfg.alpha, &grid).into_iter().map(move |(a, e)| (a, mu, e))).collect();
    let rows = jobs
        .into_par_iter()
        .map(|(alpha, mu, e)| {
            let params = PhysicalParams::natural(alpha, cfg.two_pi_gamma).with_mu(mu).with_r_sep(cfg.r_sep);
            let (a, _) = double_delta_rt_with(&params, e, &p)?;
            check_probabilities(a.refl, a.trans, &format!("alpha = {alpha}, mu = {mu}, E = {e}"))?;
            Ok(vec![e, alpha, mu, a.refl, a.trans])
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Table { metadata: metadata(cfg, "double delta"), header: vec!["E", "alpha", "mu", "R", "T"], rows })
}

/// Figure 1 data: `E_over_U,alpha,R,T` with the grid read as `E/U`.
pub fn run_figure1(cfg: &SweepConfig) -> Result<Table, CliError> {
    cfg.validate()?;
    let rows = tasks(&cfg.alpha, &cfg.grid())
        .into_par_iter()
        .map(|(alpha, x)| {
            let params = PhysicalParams::natural(alpha, cfg.two_pi_gamma);
            let u = u_scale(&params)
                .ok_or_else(|| CliError::Validation(format!("no energy scale U at alpha = {alpha}")))?;
            let a = delta_rt(&params, x * u)?;
            check_probabilities(a.refl, a.trans, &format!("alpha = {alpha}, E/U = {x}"))?;
            Ok(vec![x, alpha, a.refl, a.trans])
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Table { metadata: metadata(cfg, "figure 1, single delta"), header: vec!["E_over_U", "alpha", "R", "T"], rows })
}

/// Figures 2 and 3: `lambda_R_over_2hbar,alpha,mu,T`.
///
/// Each `(alpha, mu)` series starts with the extrapolated `λ → 0` value at
/// `x = 0`, followed by the grid.
pub fn run_figures23(cfg: &SweepConfig) -> Result<Table, CliError> {
    cfg.validate()?;
    if cfg.r_sep <= 0.0 {
        return Err(CliError::Validation("figures 2 and 3 need r_sep > 0".into()));
    }
    let p = policy(cfg)?;
    let mut grid = vec![0.0];
    grid.extend(cfg.grid().into_iter().filter(|&x| x > 0.0));
    let mut jobs = Vec::new();
    for &alpha in &cfg.alpha {
        for &mu in &cfg.mu {
            jobs.extend(grid.iter().map(|&x| (alpha, mu, x)));
        }
    }
    let rows = jobs
        .into_par_iter()
        .map(|(alpha, mu, x)| {
            let params = PhysicalParams::natural(alpha, cfg.two_pi_gamma).with_mu(mu).with_r_sep(cfg.r_sep);
            let t = if x == 0.0 {
                zero_energy_double(&params, &p)?
            } else {
                let lambda = 2.0 * params.hbar * x / cfg.r_sep;
                let (a, _) = double_delta_rt_with(&params, params.energy_at(lambda), &p)?;
                check_probabilities(a.refl, a.trans, &format!("alpha = {alpha}, mu = {mu}, x = {x}"))?;
                a.trans
            };
            if !(0.0..=1.0).contains(&t) {
                return Err(CliError::Invariant(format!("T = {t} at alpha = {alpha}, mu = {mu}, x = {x}")));
            }
            Ok(vec![x, alpha, mu, t])
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let what = format!("figure {}, double delta; first row per series is the extrapolated lambda -> 0 limit", cfg.figure);
    Ok(Table { metadata: metadata(cfg, &what), header: vec!["lambda_R_over_2hbar", "alpha", "mu", "T"], rows })
}

/// `w,alpha,J,Xi,Phi` over the grid read as `w`. `Xi` is reported as 0 at `w = 0`.
pub fn run_kernel_table(cfg: &SweepConfig) -> Result<Table, CliError> {
    cfg.validate()?;
    let p = policy(cfg)?;
    let rows = tasks(&cfg.alpha, &cfg.grid())
        .into_par_iter()
        .map(|(alpha, w)| {
            let j = j_alpha(w, alpha, &p)?;
            let xi = if w == 0.0 { 0.0 } else { xi_alpha(w, alpha, &p)? };
            let phi = phi_alpha(w.abs(), alpha, &p)?;
            Ok(vec![w, alpha, j, xi, phi])
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Table { metadata: metadata(cfg, "kernel table"), header: vec!["w", "alpha", "J", "Xi", "Phi"], rows })
}

pub fn run_verify(cfg: &SweepConfig) -> VerifyReport {
    run_all(&VerifyConfig { tol: cfg.tol })
}

/// Run the configured command. Returns the text to emit and the exit code.
pub fn run(cfg: &SweepConfig) -> Result<(String, i32), CliError> {
    let table = match cfg.mode {
        Mode::Verify => {
            let report = run_verify(cfg);
            return Ok((report.to_string(), report.exit_code()));
        }
        Mode::Delta => run_delta(cfg)?,
        Mode::DoubleDelta => run_double_delta(cfg)?,
        Mode::Kernel => run_kernel_table(cfg)?,
        Mode::Figures if cfg.figure == 1 => run_figure1(cfg)?,
        Mode::Figures => run_figures23(cfg)?,
    };
    Ok((table.to_csv(), 0))
}
