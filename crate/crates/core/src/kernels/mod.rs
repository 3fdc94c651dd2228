//! Kernel functions of the fractional delta-potential problem:
//!
//! * `J_α(w) = (1/π) PV ∫₀^∞ cos(wq)/(q^α − 1) dq`,
//! * `Ξ_α(w) = PV ∫₀^∞ sin(wq) q^(α−1)/(q^α − 1) dq`,
//! * `Φ_α(w) = −2α J_α(w)`, also available as a difference of two Fox
//!   H-functions `H^{2,1}_{2,3}` summed by residues.
//!
//! `J_α` is dispatched between a convergent small-`w` series, principal
//! value quadrature and the leading large-`w` term.

mod foxh;

use std::f64::consts::PI;
use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

pub use foxh::{foxh_2132_series, FoxH, FoxH2132Params, FoxSeries, POLE_COLLISION_TOL, POLE_MERGE_TOL};

use crate::numcore::{cos_pi, cot_pi, gamma, NumError};
use crate::pvquad::{pv_integrate, pv_integrate_with, PvOptions, QuadError};

/// α this close to a value where a retained series coefficient is infinite
/// makes the series refuse.
pub const SERIES_SINGULAR_TOL: f64 = 1e-4;

// terms smaller than this relative to w^0 are not retained
const SERIES_TERM_FLOOR: f64 = 1e-18;

// a singular pair of terms whose combined size is bounded by this is
// dropped instead of refused
const SINGULAR_PAIR_FLOOR: f64 = 1e-17;

/// Bound on the size of the `w^e ln w` term replacing a singular pair.
fn singular_pair_bound(w: f64, e: f64) -> f64 {
    w.powf(e) * (1.0 + w.ln().abs()) / gamma(e + 1.0).value
}

static SERIES_FALLBACKS: AtomicU64 = AtomicU64::new(0);

/// Number of times [`j_alpha`] replaced a refused series by quadrature.
pub fn series_fallback_count() -> u64 {
    SERIES_FALLBACKS.load(Ordering::Relaxed)
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KernelError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("series coefficient of w^{exponent} is singular at alpha = {alpha}")]
    SeriesSingular { alpha: f64, exponent: f64 },
    #[error("quadrature did not converge: value {value:e}, error estimate {abs_err:e} after {evaluations} evaluations")]
    NonConvergence { value: f64, abs_err: f64, evaluations: usize },
    #[error("pole exponents {first} and {second} nearly coincide")]
    PoleCollision { first: f64, second: f64 },
    #[error("pole of order {order} at exponent {exponent}")]
    PoleOrder { order: u32, exponent: f64 },
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// Regime boundaries and accuracy for kernel evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelEvalPolicy {
    pub w_small: f64,
    pub w_large: f64,
    pub tol: f64,
    pub series_terms: usize,
}

impl Default for KernelEvalPolicy {
    fn default() -> Self {
        Self { w_small: 0.05, w_large: 50.0, tol: 1e-10, series_terms: 40 }
    }
}

impl KernelEvalPolicy {
    pub fn with_tol(tol: f64) -> Self {
        Self { tol, ..Self::default() }
    }

    pub fn validate(&self) -> Result<(), KernelError> {
        if !(self.w_small > 0.0 && self.w_small < self.w_large) {
            return Err(KernelError::InvalidArgument(format!(
                "need 0 < w_small < w_large, got {} and {}",
                self.w_small, self.w_large
            )));
        }
        if !(1e-14..=1e-6).contains(&self.tol) {
            return Err(KernelError::InvalidArgument(format!("tol = {:e} outside [1e-14, 1e-6]", self.tol)));
        }
        if self.series_terms == 0 {
            return Err(KernelError::InvalidArgument("series_terms = 0".into()));
        }
        Ok(())
    }
}

fn check_alpha(alpha: f64) -> Result<(), KernelError> {
    if alpha > 1.0 && alpha <= 2.0 {
        Ok(())
    } else {
        Err(KernelError::InvalidArgument(format!("alpha = {alpha} outside (1, 2]")))
    }
}

fn check_w(w: f64) -> Result<(), KernelError> {
    if w.is_finite() {
        Ok(())
    } else {
        Err(KernelError::InvalidArgument(format!("w = {w}")))
    }
}

/// `J_α(0) = −cot(π/α)/α`.
pub fn j_alpha_zero(alpha: f64) -> Result<f64, KernelError> {
    check_alpha(alpha)?;
    Ok(-cot_pi(1.0 / alpha) / alpha)
}

/// `J_α(w)`, dispatched on `|w|`.
pub fn j_alpha(w: f64, alpha: f64, policy: &KernelEvalPolicy) -> Result<f64, KernelError> {
    check_alpha(alpha)?;
    check_w(w)?;
    policy.validate()?;
    let w = w.abs();
    if w <= policy.w_small {
        match j_alpha_series_terms(w, alpha, policy.series_terms) {
            Ok(v) => return Ok(v),
            Err(KernelError::SeriesSingular { .. }) => {
                SERIES_FALLBACKS.fetch_add(1, Ordering::Relaxed);
            }
            Err(e) => return Err(e),
        }
    } else if w >= policy.w_large {
        return Ok(-w.sin() / alpha);
    }
    j_alpha_quadrature(w, alpha, policy.tol)
}

/// `J_α(w)` by principal-value quadrature to absolute accuracy `tol`.
pub fn j_alpha_quadrature(w: f64, alpha: f64, tol: f64) -> Result<f64, KernelError> {
    check_alpha(alpha)?;
    check_w(w)?;
    let one = |_q: f64| 1.0;
    let r = pv_integrate(&one, alpha, w.abs(), tol * PI, false)?;
    if !r.converged {
        return Err(KernelError::NonConvergence {
            value: r.value / PI,
            abs_err: r.abs_err_estimate / PI,
            evaluations: r.evaluations,
        });
    }
    Ok(r.value / PI)
}

fn near_singular(alpha: f64, singular: impl Fn(f64) -> Option<f64>) -> bool {
    singular(alpha).is_some_and(|s| (alpha - s).abs() < SERIES_SINGULAR_TOL)
}

/// Small-`w` series of `J_α` with the default number of terms.
///
/// ```text
///   J_α(w) = Σ_{n even} c_n wⁿ + Σ_{k≥1} w^(kα−1) / (2 Γ(kα) cos(πkα/2)),
///   c_n = −(−1)^(n/2) cot(π(1+n)/α) / (α n!)
/// ```
///
/// Terms below `1e-18` are dropped. Where a coefficient is infinite the two
/// colliding terms merge into a `w^e ln w` term; when α is within
/// [`SERIES_SINGULAR_TOL`] of such a value the series refuses, unless the
/// pair is far below double precision at this `w`, in which case it is
/// dropped.
pub fn j_alpha_series(w: f64, alpha: f64) -> Result<f64, KernelError> {
    j_alpha_series_terms(w, alpha, KernelEvalPolicy::default().series_terms)
}

/// [`j_alpha_series`] with at most `max_terms` terms in each family.
pub fn j_alpha_series_terms(w: f64, alpha: f64, max_terms: usize) -> Result<f64, KernelError> {
    check_alpha(alpha)?;
    if !(0.0..=0.1).contains(&w) {
        return Err(KernelError::InvalidArgument(format!("series needs 0 ≤ w ≤ 0.1, got {w}")));
    }
    let j0 = j_alpha_zero(alpha)?;
    if w == 0.0 {
        return Ok(j0);
    }
    let max_exp = SERIES_TERM_FLOOR.ln() / w.ln();
    let mut sum = j0;

    // even powers
    let mut n = 2;
    while (n as f64) <= max_exp {
        if n / 2 > max_terms {
            return Err(KernelError::NonConvergence { value: sum, abs_err: w.powi(n as i32), evaluations: n });
        }
        let top = (1 + n) as f64;
        if near_singular(alpha, |a| {
            let m = (top / a).round();
            (m >= 1.0).then(|| top / m)
        }) {
            if singular_pair_bound(w, n as f64) > SINGULAR_PAIR_FLOOR {
                return Err(KernelError::SeriesSingular { alpha, exponent: n as f64 });
            }
            n += 2;
            continue;
        }
        let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let c = -sign * cot_pi(top / alpha) / (alpha * gamma(n as f64 + 1.0).value);
        sum += c * w.powi(n as i32);
        n += 2;
    }

    // fractional powers
    let mut k = 1usize;
    while (k as f64) * alpha - 1.0 <= max_exp {
        if k > max_terms {
            return Err(KernelError::NonConvergence { value: sum, abs_err: w.powf(k as f64 * alpha - 1.0), evaluations: k });
        }
        let kf = k as f64;
        if near_singular(alpha, |a| {
            let o = (kf * a).round();
            (o as i64 % 2 == 1).then(|| o / kf)
        }) {
            if singular_pair_bound(w, kf * alpha - 1.0) > SINGULAR_PAIR_FLOOR {
                return Err(KernelError::SeriesSingular { alpha, exponent: kf * alpha - 1.0 });
            }
            k += 1;
            continue;
        }
        let c = 1.0 / (2.0 * gamma(kf * alpha).value * cos_pi(0.5 * kf * alpha));
        sum += c * w.powf(kf * alpha - 1.0);
        k += 1;
    }
    Ok(sum)
}

/// Three-term small-`w` expansion
/// `J_α(0) + w^(α−1)/(2Γ(α)cos(πα/2)) + cot(3π/α) w²/(2α)`.
///
/// This drops the `w^(2α−1)` term, so its error is `O(w^(2α−1))`.
pub fn j_alpha_leading(w: f64, alpha: f64) -> Result<f64, KernelError> {
    check_alpha(alpha)?;
    if !(0.0..=0.1).contains(&w) {
        return Err(KernelError::InvalidArgument(format!("expansion needs 0 ≤ w ≤ 0.1, got {w}")));
    }
    let cos_half = cos_pi(0.5 * alpha);
    if cos_half.abs() < 1e-8 {
        return Err(KernelError::SeriesSingular { alpha, exponent: alpha - 1.0 });
    }
    if near_singular(alpha, |a| {
        let m = (3.0 / a).round();
        (m >= 1.0).then(|| 3.0 / m)
    }) {
        return Err(KernelError::SeriesSingular { alpha, exponent: 2.0 });
    }
    let j0 = j_alpha_zero(alpha)?;
    Ok(j0 + w.powf(alpha - 1.0) / (2.0 * gamma(alpha).value * cos_half) + cot_pi(3.0 / alpha) * w * w / (2.0 * alpha))
}

/// Leading large-`w` term `−sin(w)/α`.
pub fn j_alpha_asymptotic(w: f64, alpha: f64) -> Result<f64, KernelError> {
    check_alpha(alpha)?;
    if !(w >= 10.0) || !w.is_finite() {
        return Err(KernelError::InvalidArgument(format!("asymptotic form needs w ≥ 10, got {w}")));
    }
    Ok(-w.sin() / alpha)
}

/// `Ξ_α(w)`, odd in `w`.
pub fn xi_alpha(w: f64, alpha: f64, policy: &KernelEvalPolicy) -> Result<f64, KernelError> {
    check_alpha(alpha)?;
    check_w(w)?;
    policy.validate()?;
    if w == 0.0 {
        return Err(KernelError::InvalidArgument("Ξ is discontinuous at w = 0".into()));
    }
    let g = move |q: f64| q.powf(alpha - 1.0);
    let mut opts = PvOptions::new(alpha, w.abs(), policy.tol, true);
    opts.g_growth = alpha - 1.0;
    let r = pv_integrate_with(&g, &opts)?;
    if !r.converged {
        return Err(KernelError::NonConvergence {
            value: r.value,
            abs_err: r.abs_err_estimate,
            evaluations: r.evaluations,
        });
    }
    Ok(w.signum() * r.value)
}

/// `Ξ_α(0⁺)` by linear extrapolation from `w = 10⁻³` and `5·10⁻⁴`.
pub fn xi_zero_limit(alpha: f64, policy: &KernelEvalPolicy) -> Result<f64, KernelError> {
    let a = xi_alpha(5e-4, alpha, policy)?;
    let b = xi_alpha(1e-3, alpha, policy)?;
    Ok(2.0 * a - b)
}

/// `Φ_α(w) = −2α J_α(w)` for `w ≥ 0`.
pub fn phi_alpha(w: f64, alpha: f64, policy: &KernelEvalPolicy) -> Result<f64, KernelError> {
    if !(w >= 0.0) {
        return Err(KernelError::InvalidArgument(format!("Φ needs w ≥ 0, got {w}")));
    }
    Ok(-2.0 * alpha * j_alpha(w, alpha, policy)?)
}

/// `Φ_α(w) = (α/w)(H⁺ − H⁻)` with `H^± = H^{2,1}_{2,3}[w^α]` at `μ = (2 ± α)/2`,
/// for `0 < w^α ≤ 1`.
pub fn phi_alpha_fox(w: f64, alpha: f64, n_terms: usize) -> Result<f64, KernelError> {
    check_alpha(alpha)?;
    if !(w > 0.0) {
        return Err(KernelError::InvalidArgument(format!("Fox route needs w > 0, got {w}")));
    }
    let z = w.powf(alpha);
    let plus = foxh_2132_series(FoxH2132Params::new(alpha, true, z)?, n_terms)?;
    let minus = foxh_2132_series(FoxH2132Params::new(alpha, false, z)?, n_terms)?;
    Ok(alpha / w * (plus - minus))
}

#[cfg(test)]
mod tests;
