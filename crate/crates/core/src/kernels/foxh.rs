//! Residue series for Fox H-functions
//!
//! ```text
//!   H^{m,n}_{p,q}[z | (a₁,A₁) … (a_p,A_p); (b₁,B₁) … (b_q,B_q)]
//! ```
//!
//! summed over the left poles `s = −(b_j + ν)/B_j`, `j ≤ m`. At every pole
//! each gamma factor is expanded to first order in `ε = s − s₀`, so
//! coinciding poles (double poles producing `ln z` terms) and poles that
//! are cancelled by a denominator factor are handled by the same code.

use crate::numcore::{digamma, gamma};

use super::KernelError;

/// Distinct pole exponents closer than this are merged into one pole.
pub const POLE_MERGE_TOL: f64 = 1e-9;

/// Distinct pole exponents closer than this (but not merged) are refused.
pub const POLE_COLLISION_TOL: f64 = 1e-6;

// a gamma argument this close to a non-positive integer sits on a pole
const ARG_POLE_TOL: f64 = 1e-7;

/// A Fox H-function `H^{m,n}_{p,q}` given by its parameter pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct FoxH {
    pub m: usize,
    pub n: usize,
    /// Upper pairs `(a_i, A_i)`, `i = 1..p`.
    pub a: Vec<(f64, f64)>,
    /// Lower pairs `(b_j, B_j)`, `j = 1..q`.
    pub b: Vec<(f64, f64)>,
}

/// Partial sum of the residue series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FoxSeries {
    pub value: f64,
    /// Magnitude of the last retained terms of every pole family.
    pub truncation_estimate: f64,
    /// Number of distinct poles summed.
    pub poles: usize,
}

/// First-order Laurent data of a product of gamma functions at a point.
#[derive(Debug, Clone, Copy)]
struct Laurent {
    order: i32,
    coeff: f64,
    log_deriv: f64,
}

/// `Γ(c + C s)` at `s = s₀ + ε`: pole order, leading coefficient and the
/// coefficient of `ε` in the logarithmic derivative of the regular part.
fn gamma_laurent(c: f64, slope: f64, s0: f64) -> Result<Laurent, ()> {
    let arg = c + slope * s0;
    let k = arg.round();
    if k <= 0.0 && (arg - k).abs() <= ARG_POLE_TOL {
        if slope == 0.0 {
            // constant factor sitting on a pole
            return Err(());
        }
        let k = -k;
        let sign = if (k as u64).is_multiple_of(2) { 1.0 } else { -1.0 };
        let fact = gamma(k + 1.0).value;
        return Ok(Laurent { order: 1, coeff: sign / (fact * slope), log_deriv: slope * digamma(k + 1.0) });
    }
    let log_deriv = if slope == 0.0 { 0.0 } else { slope * digamma(arg) };
    Ok(Laurent { order: 0, coeff: gamma(arg).value, log_deriv })
}

impl FoxH {
    pub fn new(m: usize, n: usize, a: Vec<(f64, f64)>, b: Vec<(f64, f64)>) -> Result<Self, KernelError> {
        let h = Self { m, n, a, b };
        h.validate()?;
        Ok(h)
    }

    fn validate(&self) -> Result<(), KernelError> {
        let bad = |msg: String| Err(KernelError::InvalidArgument(msg));
        if self.m == 0 || self.m > self.b.len() || self.n > self.a.len() {
            return bad(format!("orders m = {}, n = {} with p = {}, q = {}", self.m, self.n, self.a.len(), self.b.len()));
        }
        for &(c, s) in self.a.iter().chain(self.b.iter()) {
            if !c.is_finite() || !s.is_finite() || s < 0.0 {
                return bad(format!("parameter pair ({c}, {s})"));
            }
        }
        for &(b, bb) in &self.b[..self.m] {
            if !(bb > 0.0) {
                return bad(format!("left pole family ({b}, {bb}) needs a positive slope"));
            }
        }
        Ok(())
    }

    fn p(&self) -> usize {
        self.a.len()
    }

    fn q(&self) -> usize {
        self.b.len()
    }

    /// Gamma factors as `(c, C, in_numerator)` for `Γ(c + C s)`.
    fn factors(&self) -> Vec<(f64, f64, bool)> {
        let mut out = Vec::with_capacity(self.p() + self.q());
        for (j, &(b, bb)) in self.b.iter().enumerate() {
            if j < self.m {
                out.push((b, bb, true));
            } else {
                out.push((1.0 - b, -bb, false));
            }
        }
        for (i, &(a, aa)) in self.a.iter().enumerate() {
            if i < self.n {
                out.push((1.0 - a, -aa, true));
            } else {
                out.push((a, aa, false));
            }
        }
        out
    }

    /// Residue of the Mellin–Barnes integrand at `s₀`, or `None` when a
    /// constant denominator factor is infinite (the function vanishes).
    fn residue(&self, s0: f64, z: f64, exponent: f64) -> Result<Option<f64>, KernelError> {
        let mut order = 0;
        let mut coeff = 1.0;
        let mut log_deriv = 0.0;
        for (c, slope, num) in self.factors() {
            match gamma_laurent(c, slope, s0) {
                Err(()) if num => {
                    return Err(KernelError::InvalidArgument(format!(
                        "numerator factor Γ({c}) is infinite for every s"
                    )))
                }
                Err(()) => return Ok(None),
                Ok(l) => {
                    if num {
                        order += l.order;
                        coeff *= l.coeff;
                        log_deriv += l.log_deriv;
                    } else {
                        order -= l.order;
                        coeff /= l.coeff;
                        log_deriv -= l.log_deriv;
                    }
                }
            }
        }
        let power = z.powf(-s0);
        match order {
            o if o <= 0 => Ok(Some(0.0)),
            1 => Ok(Some(coeff * power)),
            2 => Ok(Some(coeff * power * (log_deriv - z.ln()))),
            o => Err(KernelError::PoleOrder { order: o as u32, exponent }),
        }
    }

    /// Residue series truncated after `n_terms` poles of the slowest family.
    pub fn series(&self, z: f64, n_terms: usize) -> Result<FoxSeries, KernelError> {
        self.validate()?;
        if !(z >= 0.0) || !z.is_finite() {
            return Err(KernelError::InvalidArgument(format!("argument z = {z}")));
        }
        if n_terms == 0 {
            return Err(KernelError::InvalidArgument("zero series terms".into()));
        }
        let families = &self.b[..self.m];
        let cutoff = families
            .iter()
            .map(|&(b, bb)| (b + (n_terms - 1) as f64) / bb)
            .fold(f64::INFINITY, f64::min);

        let mut exps = Vec::new();
        for &(b, bb) in families {
            let mut nu = 0.0;
            loop {
                let e = (b + nu) / bb;
                if e > cutoff * (1.0 + 1e-12) + 1e-12 {
                    break;
                }
                exps.push(e);
                nu += 1.0;
            }
        }
        exps.sort_by(f64::total_cmp);
        let mut poles: Vec<f64> = Vec::with_capacity(exps.len());
        for e in exps {
            if let Some(&last) = poles.last() {
                let gap = e - last;
                let scale = last.abs().max(1.0);
                if gap <= POLE_MERGE_TOL * scale {
                    continue;
                }
                if gap <= POLE_COLLISION_TOL * scale {
                    return Err(KernelError::PoleCollision { first: last, second: e });
                }
            }
            poles.push(e);
        }

        if z == 0.0 {
            if poles.first().is_some_and(|&e| e > 0.0) {
                return Ok(FoxSeries { value: 0.0, truncation_estimate: 0.0, poles: 0 });
            }
            return Err(KernelError::InvalidArgument("series diverges at z = 0".into()));
        }

        let mut terms = Vec::with_capacity(poles.len());
        for &e in &poles {
            match self.residue(-e, z, e)? {
                None => return Ok(FoxSeries { value: 0.0, truncation_estimate: 0.0, poles: 0 }),
                Some(t) => terms.push((e, t)),
            }
        }
        let value = terms.iter().map(|t| t.1).sum();

        // last two terms of every family
        let mut truncation_estimate = 0.0;
        for &(b, bb) in families {
            let last_nu = (cutoff * bb - b + 1e-9).floor();
            for back in 0..2 {
                let e = (b + last_nu - back as f64) / bb;
                if let Some(t) = terms.iter().find(|t| (t.0 - e).abs() <= POLE_MERGE_TOL * e.abs().max(1.0)) {
                    truncation_estimate += t.1.abs();
                }
            }
        }
        Ok(FoxSeries { value, truncation_estimate, poles: terms.len() })
    }

    /// `G` with `self(x) = c · G(x^c)`.
    pub fn with_power_argument(&self, c: f64) -> FoxH {
        FoxH {
            m: self.m,
            n: self.n,
            a: self.a.iter().map(|&(a, aa)| (a, aa * c)).collect(),
            b: self.b.iter().map(|&(b, bb)| (b, bb * c)).collect(),
        }
    }

    /// `G` with `z^σ · self(z) = G(z)`.
    pub fn multiplied_by_power(&self, sigma: f64) -> FoxH {
        FoxH {
            m: self.m,
            n: self.n,
            a: self.a.iter().map(|&(a, aa)| (a + sigma * aa, aa)).collect(),
            b: self.b.iter().map(|&(b, bb)| (b + sigma * bb, bb)).collect(),
        }
    }

    /// Drop one pair of cancelling gamma factors if there is one: the first
    /// upper pair against the last lower pair (`n ≥ 1`, `q > m`), or the
    /// first lower pair against the last upper pair (`m ≥ 2`, `p > n`).
    pub fn lowered(&self) -> Option<FoxH> {
        let (p, q) = (self.p(), self.q());
        if self.n >= 1 && q > self.m && self.a[0] == self.b[q - 1] {
            return Some(FoxH {
                m: self.m,
                n: self.n - 1,
                a: self.a[1..].to_vec(),
                b: self.b[..q - 1].to_vec(),
            });
        }
        if self.m >= 2 && p > self.n && self.b[0] == self.a[p - 1] {
            return Some(FoxH {
                m: self.m - 1,
                n: self.n,
                a: self.a[..p - 1].to_vec(),
                b: self.b[1..].to_vec(),
            });
        }
        None
    }
}

/// Parameters of `H^{2,1}_{2,3}[z | (1,1),(1,μ); (1,α),(1,1),(1,μ)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FoxH2132Params {
    pub alpha: f64,
    pub mu_param: f64,
    pub z: f64,
}

impl FoxH2132Params {
    /// `μ = (2 + α)/2` when `plus`, `(2 − α)/2` otherwise.
    pub fn new(alpha: f64, plus: bool, z: f64) -> Result<Self, KernelError> {
        let mu_param = if plus { 0.5 * (2.0 + alpha) } else { 0.5 * (2.0 - alpha) };
        let p = Self { alpha, mu_param, z };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<(), KernelError> {
        if !(self.alpha > 1.0 && self.alpha <= 2.0) {
            return Err(KernelError::InvalidArgument(format!("alpha = {} outside (1, 2]", self.alpha)));
        }
        let plus = 0.5 * (2.0 + self.alpha);
        let minus = 0.5 * (2.0 - self.alpha);
        if (self.mu_param - plus).abs() > 1e-12 && (self.mu_param - minus).abs() > 1e-12 {
            return Err(KernelError::InvalidArgument(format!("mu = {} is not (2 ± α)/2", self.mu_param)));
        }
        if !(0.0..=1.0).contains(&self.z) {
            return Err(KernelError::InvalidArgument(format!("z = {} outside [0, 1]", self.z)));
        }
        Ok(())
    }

    pub fn to_fox(&self) -> FoxH {
        let mu = self.mu_param;
        FoxH {
            m: 2,
            n: 1,
            a: vec![(1.0, 1.0), (1.0, mu)],
            b: vec![(1.0, self.alpha), (1.0, 1.0), (1.0, mu)],
        }
    }
}

/// Series value of the `H^{2,1}_{2,3}` family.
pub fn foxh_2132_series(p: FoxH2132Params, n_terms: usize) -> Result<f64, KernelError> {
    p.validate()?;
    Ok(p.to_fox().series(p.z, n_terms)?.value)
}
