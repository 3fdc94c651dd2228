//! Reflection and transmission for one and two delta centres under the
//! fractional kinetic term `D_α |p|^α`.
//!
//! Units follow the momentum-space solution: `E/D_α = λ^α`,
//! `γ = V₀/(2πħD_α)` and `ε = λ^(α−1)/(2πγ)`. For a single centre the
//! scattering is governed by `d = αε − cot(π/α) = 1/Ω_α`.

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::kernels::{j_alpha, j_alpha_zero, KernelError, KernelEvalPolicy, SERIES_SINGULAR_TOL};
use crate::numcore::{cos_pi, cot_pi, gamma};

/// `|W|` below this makes the two-centre system degenerate.
pub const W_DEGENERATE_TOL: f64 = 1e-14;

/// Number of energies used for zero-energy extrapolation.
pub const ZERO_ENERGY_POINTS: usize = 5;

/// Ratio between consecutive extrapolation points in `E^((α−1)/α)`.
pub const ZERO_ENERGY_RATIO: f64 = 2.0;

/// First extrapolation point in `E^((α−1)/α)`, relative to the smallest scale.
pub const ZERO_ENERGY_START: f64 = 1e-3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScatteringError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("two-centre system is degenerate: W = {w:e}")]
    InternalResonance { w: f64 },
    #[error("scattering denominator vanishes")]
    SingularDenominator,
    #[error("singular expansion coefficient: {0}")]
    SingularCoefficient(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// Physical constants of the problem. `mu` and `r_sep` only matter for two centres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub hbar: f64,
    pub d_alpha: f64,
    pub alpha: f64,
    pub v0: f64,
    pub mu: f64,
    pub r_sep: f64,
}

impl PhysicalParams {
    /// `ħ = D_α = 1` with `V₀ = 2πγ`, `μ = 1`, `R = 0`.
    pub fn natural(alpha: f64, two_pi_gamma: f64) -> Self {
        Self { hbar: 1.0, d_alpha: 1.0, alpha, v0: two_pi_gamma, mu: 1.0, r_sep: 0.0 }
    }

    pub fn with_mu(self, mu: f64) -> Self {
        Self { mu, ..self }
    }

    pub fn with_r_sep(self, r_sep: f64) -> Self {
        Self { r_sep, ..self }
    }

    pub fn with_v0(self, v0: f64) -> Self {
        Self { v0, ..self }
    }

    pub fn validate(&self) -> Result<(), ScatteringError> {
        let bad = |m: String| Err(ScatteringError::Domain(m));
        if !(self.alpha > 1.0 && self.alpha <= 2.0) {
            return bad(format!("alpha = {} outside (1, 2]", self.alpha));
        }
        if !(self.hbar > 0.0) || !self.hbar.is_finite() {
            return bad(format!("hbar = {}", self.hbar));
        }
        if !(self.d_alpha > 0.0) || !self.d_alpha.is_finite() {
            return bad(format!("d_alpha = {}", self.d_alpha));
        }
        if self.v0 == 0.0 || !self.v0.is_finite() {
            return bad(format!("coupling v0 = {} must be finite and nonzero", self.v0));
        }
        if !(self.r_sep >= 0.0) || !self.r_sep.is_finite() {
            return bad(format!("r_sep = {}", self.r_sep));
        }
        if !self.mu.is_finite() {
            return bad(format!("mu = {}", self.mu));
        }
        Ok(())
    }

    /// Energy at momentum scale `λ`.
    pub fn energy_at(&self, lambda: f64) -> f64 {
        self.d_alpha * lambda.powf(self.alpha)
    }
}

/// Derived scales at one energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringScales {
    pub lambda: f64,
    pub gamma: f64,
    pub epsilon: f64,
    /// `U`, defined only for repulsive coupling.
    pub u_scale: Option<f64>,
    pub h_param: f64,
}

/// `U = (V₀/(αħD_α^(1/α)))^(α/(α−1))` for `V₀ > 0`.
pub fn u_scale(params: &PhysicalParams) -> Option<f64> {
    let PhysicalParams { hbar, d_alpha, alpha, v0, .. } = *params;
    (v0 > 0.0).then(|| (v0 / (alpha * hbar * d_alpha.powf(1.0 / alpha))).powf(alpha / (alpha - 1.0)))
}

pub fn scales_from(params: &PhysicalParams, e: f64) -> Result<ScatteringScales, ScatteringError> {
    params.validate()?;
    if !(e > 0.0) || !e.is_finite() {
        return Err(ScatteringError::Domain(format!("energy E = {e} must be positive")));
    }
    let alpha = params.alpha;
    let lambda = (e / params.d_alpha).powf(1.0 / alpha);
    let gamma = params.v0 / (2.0 * PI * params.hbar * params.d_alpha);
    let epsilon = lambda.powf(alpha - 1.0) / (2.0 * PI * gamma);
    Ok(ScatteringScales { lambda, gamma, epsilon, u_scale: u_scale(params), h_param: 1.0 / (2.0 * PI * gamma) })
}

/// Reflection and transmission amplitudes with their probabilities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplitudes {
    pub r: Complex64,
    pub t: Complex64,
    pub refl: f64,
    pub trans: f64,
}

impl Amplitudes {
    fn new(r: Complex64, t: Complex64) -> Self {
        Self { r, t, refl: r.norm_sqr(), trans: t.norm_sqr() }
    }

    /// `|r|² + |t|² − 1`.
    pub fn unitarity_defect(&self) -> f64 {
        self.refl + self.trans - 1.0
    }
}

/// `d = αε − cot(π/α)`, the reciprocal of `Ω_α`.
pub fn inverse_omega(params: &PhysicalParams, e: f64) -> Result<f64, ScatteringError> {
    let s = scales_from(params, e)?;
    Ok(params.alpha * s.epsilon - cot_pi(1.0 / params.alpha))
}

/// Single centre at the origin with coupling `V₀`.
///
/// `r = −iΩ/(1 + iΩ)`, `t = 1/(1 + iΩ)`, written in terms of `d = 1/Ω` so
/// that the pole of `Ω` (reachable for `V₀ < 0`) gives `r = −1`, `t = 0`.
pub fn delta_rt(params: &PhysicalParams, e: f64) -> Result<Amplitudes, ScatteringError> {
    let d = inverse_omega(params, e)?;
    let den = Complex64::new(d, 1.0);
    let r = Complex64::new(0.0, -1.0) / den;
    let t = Complex64::new(d, 0.0) / den;
    Ok(Amplitudes::new(r, t))
}

/// Intermediate quantities of the two-centre solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleDeltaInternals {
    pub j0: f64,
    pub j_r: f64,
    pub w_det: f64,
    pub u_frac: f64,
    pub v_frac: f64,
    pub x_frac: f64,
    pub rho: f64,
    pub sigma: f64,
    pub tau: f64,
    pub delta_sq: f64,
    /// `𝒯 = 1/(1 + Δ²)`.
    pub t_final: f64,
    /// `ρ² − σ² − τ²` from `ρ, σ, τ`.
    pub p_direct: f64,
    /// `sin²(λR/ħ)/(α²W)`.
    pub p_identity: f64,
}

/// Centres `V₀ δ(x + R/2) + μV₀ δ(x − R/2)` with the default kernel policy.
pub fn double_delta_rt(params: &PhysicalParams, e: f64) -> Result<(Amplitudes, DoubleDeltaInternals), ScatteringError> {
    double_delta_rt_with(params, e, &KernelEvalPolicy::default())
}

pub fn double_delta_rt_with(
    params: &PhysicalParams,
    e: f64,
    policy: &KernelEvalPolicy,
) -> Result<(Amplitudes, DoubleDeltaInternals), ScatteringError> {
    let sc = scales_from(params, e)?;
    if params.mu == 0.0 {
        return Err(ScatteringError::Domain("mu = 0; use the single-centre solution".into()));
    }
    let alpha = params.alpha;
    let eps = sc.epsilon;
    let w = sc.lambda * params.r_sep / params.hbar;
    let j0 = j_alpha_zero(alpha)?;
    let j_r = if w == 0.0 { j0 } else { j_alpha(w, alpha, policy)? };
    let a = eps + j0;
    let b = eps / params.mu + j0;
    let w_det = a * b - j_r * j_r;
    if w_det.abs() < W_DEGENERATE_TOL {
        return Err(ScatteringError::InternalResonance { w: w_det });
    }
    let u_frac = b / (alpha * w_det);
    let v_frac = a / (alpha * w_det);
    let x_frac = j_r / (alpha * w_det);
    let (s, c) = w.sin_cos();
    let half_sum = 0.5 * (u_frac + v_frac);
    let rho = half_sum - x_frac * c;
    let sigma = half_sum * c - x_frac;
    let tau = 0.5 * (u_frac - v_frac) * s;

    // (ρ − σ)(ρ + σ) − τ² avoids squaring before subtracting
    let p_direct = (rho - sigma) * (rho + sigma) - tau * tau;
    let p_identity = s * s / (alpha * alpha * w_det);

    let den = Complex64::new(p_direct - 1.0, -2.0 * rho);
    if den.norm() == 0.0 {
        return Err(ScatteringError::SingularDenominator);
    }
    let r = Complex64::new(2.0 * tau, 2.0 * sigma) / den;
    let t = -Complex64::new(p_direct + 1.0, 0.0) / den;

    let a2w = alpha * alpha * w_det;
    let delta_sq = 4.0 * a2w * a2w * (sigma * sigma + tau * tau) / ((a2w + s * s) * (a2w + s * s));
    let internals = DoubleDeltaInternals {
        j0,
        j_r,
        w_det,
        u_frac,
        v_frac,
        x_frac,
        rho,
        sigma,
        tau,
        delta_sq,
        t_final: 1.0 / (1.0 + delta_sq),
        p_direct,
        p_identity,
    };
    Ok((Amplitudes::new(r, t), internals))
}

/// `lim_{E→0} 𝒯 = cos²(π/α)`.
pub fn zero_energy_t(alpha: f64) -> Result<f64, ScatteringError> {
    if !(alpha > 1.0 && alpha <= 2.0) {
        return Err(ScatteringError::Domain(format!("alpha = {alpha} outside (1, 2]")));
    }
    let c = cos_pi(1.0 / alpha);
    Ok(c * c)
}

/// Coefficients of the small-energy expansion of the two-centre problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroEnergyExpansion {
    pub a1: f64,
    pub a2: f64,
    pub b1: f64,
    pub b2: f64,
    pub b1p: f64,
    pub b2p: f64,
    pub b3p: f64,
    pub limit_delta_sq: f64,
    pub limit_t: f64,
}

/// `J_α(λR/ħ) = J_α(0) + A₁λ^(α−1) + A₂λ² + …` and the resulting
/// expansions `4α²W²(σ²+τ²) = B₁λ^(2(α−1)) + B₂λ^(α+1) + …`,
/// `α²W²(ρ²−σ²−τ²+1) = B′₁λ^(2(α−1)) + B′₂λ^(4(α−1)) + B′₃λ^(α+1) + …`.
///
/// `B′₂ = α²(H²/μ − A₁²)²`, the square of the `λ^(2(α−1))` coefficient of `W`.
pub fn small_energy_expansion(params: &PhysicalParams) -> Result<ZeroEnergyExpansion, ScatteringError> {
    params.validate()?;
    let PhysicalParams { hbar, alpha, mu, r_sep, .. } = *params;
    if alpha >= 2.0 {
        return Err(ScatteringError::Domain("expansion needs alpha < 2".into()));
    }
    if !(r_sep > 0.0) {
        return Err(ScatteringError::Domain("expansion needs r_sep > 0".into()));
    }
    if mu == 0.0 {
        return Err(ScatteringError::Domain("expansion needs mu ≠ 0".into()));
    }
    let m = (3.0 / alpha).round();
    if m >= 1.0 && (alpha - 3.0 / m).abs() < SERIES_SINGULAR_TOL {
        return Err(ScatteringError::SingularCoefficient(format!("cot(3π/α) has a pole at alpha = {alpha}")));
    }
    let cos_half = cos_pi(0.5 * alpha);
    if cos_half.abs() < 1e-8 {
        return Err(ScatteringError::SingularCoefficient(format!("cos(πα/2) vanishes at alpha = {alpha}")));
    }
    let sc = scales_from(params, 1.0)?;
    let h = sc.h_param;
    let j0 = j_alpha_zero(alpha)?;
    let rh = r_sep / hbar;
    let a1 = rh.powf(alpha - 1.0) / (2.0 * gamma(alpha).value * cos_half);
    let a2 = rh * rh * cot_pi(3.0 / alpha) / (2.0 * alpha);
    let x = h * (1.0 + 1.0 / mu) - 2.0 * a1;
    let b1 = x * x;
    let b2 = -2.0 * x * (2.0 * a2 + j0 * rh * rh);
    let b1p = alpha * alpha * j0 * j0 * x * x;
    let b2p = alpha * alpha * (h * h / mu - a1 * a1).powi(2);
    let b3p = -2.0 * alpha * j0 * x * (2.0 * alpha * alpha * j0 * a2 - rh * rh);
    Ok(ZeroEnergyExpansion {
        a1,
        a2,
        b1,
        b2,
        b1p,
        b2p,
        b3p,
        limit_delta_sq: 1.0 / (alpha * alpha * j0 * j0),
        limit_t: zero_energy_t(alpha)?,
    })
}

/// Transmission of two equal centres in standard quantum mechanics,
/// `μ₀⁴ / (μ₀⁴ + [βμ₀ cos 2μ₀ + (β²/2) sin 2μ₀]²)`.
pub fn galindo_transmission(mu0: f64, beta: f64) -> f64 {
    let m4 = mu0.powi(4);
    let bracket = beta * mu0 * (2.0 * mu0).cos() + 0.5 * beta * beta * (2.0 * mu0).sin();
    m4 / (m4 + bracket * bracket)
}

/// `α = 2` closed forms `(𝒯_single, 𝒯_double)`; the second needs `μ = 1`.
pub fn alpha2_oracles(params: &PhysicalParams, e: f64) -> Result<(f64, f64), ScatteringError> {
    let sc = scales_from(params, e)?;
    if params.alpha != 2.0 {
        return Err(ScatteringError::Domain(format!("oracles need alpha = 2, got {}", params.alpha)));
    }
    if params.mu != 1.0 {
        return Err(ScatteringError::Domain(format!("two-centre oracle needs mu = 1, got {}", params.mu)));
    }
    if !(params.r_sep > 0.0) {
        return Err(ScatteringError::Domain("two-centre oracle needs r_sep > 0".into()));
    }
    let u = sc.u_scale.ok_or_else(|| ScatteringError::Domain("U needs v0 > 0".into()))?;
    let t_single = 1.0 / (1.0 + u / e);
    let mu0 = sc.lambda * params.r_sep / (2.0 * params.hbar);
    let t_double = galindo_transmission(mu0, mu0 / sc.epsilon);
    Ok((t_single, t_double))
}

/// Value at `x = 0` of the interpolating polynomial through `(xs, ys)`.
pub fn extrapolate_to_zero(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let mut p = ys.to_vec();
    let n = p.len();
    for level in 1..n {
        for i in 0..n - level {
            let (xa, xb) = (xs[i], xs[i + level]);
            p[i] = (xa * p[i + 1] - xb * p[i]) / (xa - xb);
        }
    }
    p[0]
}

/// Extrapolation energies.
///
/// With `x = E^((α−1)/α)` the points are `x₀·2^i`, where `x₀` is a small
/// fraction of the `x` of the lower of the coupling scale `U` (taken with
/// `|V₀|`) and the separation scale `D_α(ħ/R)^α`.
pub fn zero_energy_grid(params: &PhysicalParams) -> Vec<f64> {
    let alpha = params.alpha;
    let mut scale = u_scale(&params.with_v0(params.v0.abs())).unwrap_or(1.0);
    if params.r_sep > 0.0 {
        scale = scale.min(params.d_alpha * (params.hbar / params.r_sep).powf(alpha));
    }
    let expo = (alpha - 1.0) / alpha;
    let x0 = ZERO_ENERGY_START * scale.powf(expo);
    (0..ZERO_ENERGY_POINTS).map(|i| (x0 * ZERO_ENERGY_RATIO.powi(i as i32)).powf(1.0 / expo)).collect()
}

fn extrapolate_in_energy(
    params: &PhysicalParams,
    f: impl Fn(f64) -> Result<f64, ScatteringError>,
) -> Result<f64, ScatteringError> {
    params.validate()?;
    let energies = zero_energy_grid(params);
    let expo = (params.alpha - 1.0) / params.alpha;
    let xs: Vec<f64> = energies.iter().map(|e| e.powf(expo)).collect();
    let ys = energies.iter().map(|&e| f(e)).collect::<Result<Vec<_>, _>>()?;
    Ok(extrapolate_to_zero(&xs, &ys))
}

/// `𝒯(E → 0)` of the single centre, extrapolated in `E^((α−1)/α)`.
pub fn zero_energy_single(params: &PhysicalParams) -> Result<f64, ScatteringError> {
    extrapolate_in_energy(params, |e| Ok(delta_rt(params, e)?.trans))
}

/// `𝒯(E → 0)` of the two-centre problem, extrapolated in `E^((α−1)/α)`.
pub fn zero_energy_double(params: &PhysicalParams, policy: &KernelEvalPolicy) -> Result<f64, ScatteringError> {
    extrapolate_in_energy(params, |e| Ok(double_delta_rt_with(params, e, policy)?.1.t_final))
}
