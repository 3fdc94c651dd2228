//! Principal-value quadrature for integrals of the form
//!
//! ```text
//!   PV ∫₀^∞ g(q) trig(w q) / (q^α − 1) dq
//! ```
//!
//! with a single simple pole at `q = 1` and an algebraically decaying,
//! possibly oscillatory tail. The range is split into three parts:
//!
//! * `[0, 1 − δ]`, integrated adaptively;
//! * the symmetric window `[1 − δ, 1 + δ]`, where the pole part
//!   `g(1) trig(w) / (α (q − 1))` is subtracted (its principal value over a
//!   symmetric window vanishes) and the smooth remainder is integrated;
//! * the tail `[1 + δ, ∞)`, handed to [`oscillatory_tail`].
//!
//! The local integrator is a globally adaptive 21-point Gauss–Kronrod rule
//! with the usual QUADPACK error heuristics.

use std::f64::consts::PI;

use thiserror::Error;

/// Default evaluation budget for one principal-value integral.
pub const DEFAULT_MAX_EVALS: usize = 2_000_000;

/// Default half-width of the symmetric window around the pole.
pub const DEFAULT_WINDOW: f64 = 0.5;

const MAX_TAIL_PIECES: usize = 400;
const MIN_TAIL_PIECES: usize = 8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadError {
    #[error("invalid quadrature input: {0}")]
    InvalidInput(String),
}

/// Result of a quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_err_estimate: f64,
    pub converged: bool,
    pub evaluations: usize,
}

/// Shape of an integrand tail `envelope(q) · trig(w q)` on `[a, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailSpec {
    /// Frequency of the trigonometric factor.
    pub w: f64,
    /// `envelope(q) ~ q^(-decay)` as `q → ∞`.
    pub decay: f64,
    /// Start of the tail.
    pub a: f64,
    /// `sin(w q)` instead of `cos(w q)`.
    pub use_sine: bool,
}

impl TailSpec {
    fn validate(&self) -> Result<(), QuadError> {
        if !(self.w >= 0.0) || !self.w.is_finite() {
            return Err(QuadError::InvalidInput(format!("tail frequency {}", self.w)));
        }
        if !(self.a > 0.0) || !self.a.is_finite() {
            return Err(QuadError::InvalidInput(format!("tail start {}", self.a)));
        }
        // The alternating partition only needs a decaying envelope; the
        // non-oscillatory branch needs absolute integrability.
        let min_decay = if self.w > 0.0 { 0.0 } else { 1.0 };
        if !(self.decay > min_decay) {
            return Err(QuadError::InvalidInput(format!(
                "decay exponent {} must exceed {min_decay} for w = {}",
                self.decay, self.w
            )));
        }
        Ok(())
    }
}

/// Options for [`pv_integrate_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PvOptions {
    pub alpha: f64,
    pub w: f64,
    pub tol: f64,
    pub use_sine: bool,
    /// Half-width δ of the pole-subtraction window.
    pub window: f64,
    /// `g(q) ~ q^g_growth` at infinity; the tail decays as `q^(g_growth − α)`.
    pub g_growth: f64,
    pub max_evals: usize,
}

impl PvOptions {
    pub fn new(alpha: f64, w: f64, tol: f64, use_sine: bool) -> Self {
        Self {
            alpha,
            w,
            tol,
            use_sine,
            window: DEFAULT_WINDOW,
            g_growth: 0.0,
            max_evals: DEFAULT_MAX_EVALS,
        }
    }

    fn validate(&self) -> Result<(), QuadError> {
        if !(self.alpha > 1.0 && self.alpha <= 2.0) {
            return Err(QuadError::InvalidInput(format!("alpha = {} outside (1, 2]", self.alpha)));
        }
        if !(self.w >= 0.0) || !self.w.is_finite() {
            return Err(QuadError::InvalidInput(format!("w = {} must be finite and ≥ 0", self.w)));
        }
        if !(1e-14..=1e-4).contains(&self.tol) {
            return Err(QuadError::InvalidInput(format!("tol = {:e} outside [1e-14, 1e-4]", self.tol)));
        }
        if !(self.window > 0.0) {
            return Err(QuadError::InvalidInput(format!("window = {}", self.window)));
        }
        if self.max_evals == 0 {
            return Err(QuadError::InvalidInput("zero evaluation budget".into()));
        }
        Ok(())
    }
}

#[derive(Debug)]
struct Budget {
    used: usize,
    max: usize,
}

impl Budget {
    fn new(max: usize) -> Self {
        Self { used: 0, max }
    }

    fn exhausted(&self) -> bool {
        self.used >= self.max
    }
}

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689,
    0.973_906_528_517_171_720_077_964_012_084,
    0.930_157_491_355_708_226_001_207_180_060,
    0.865_063_366_688_984_510_732_096_688_423,
    0.780_817_726_586_416_897_063_717_578_345,
    0.679_409_568_299_024_406_234_327_365_115,
    0.562_757_134_668_604_683_339_000_099_273,
    0.433_395_394_129_247_190_799_265_943_166,
    0.294_392_862_701_460_198_131_126_603_104,
    0.148_874_338_981_631_210_884_826_001_130,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062,
    0.032_558_162_307_964_727_478_818_972_459,
    0.054_755_896_574_351_996_031_381_300_245,
    0.075_039_674_810_919_952_767_043_140_916,
    0.093_125_454_583_697_605_535_065_465_083,
    0.109_387_158_802_297_641_899_210_590_326,
    0.123_491_976_262_065_851_077_715_360_064,
    0.134_709_217_311_473_325_928_054_001_772,
    0.142_775_938_577_060_080_797_094_273_139,
    0.147_739_104_901_338_491_374_841_515_972,
    0.149_445_554_002_916_905_664_936_468_390,
];
// Gauss weights for XGK[1], XGK[3], ..., XGK[9]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893,
    0.149_451_349_150_580_593_145_776_339_658,
    0.219_086_362_515_982_043_995_534_934_228,
    0.269_266_719_309_996_355_091_226_921_569,
    0.295_524_224_714_752_870_173_892_994_651,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
    /// the error estimate is at the rounding floor; bisection cannot help
    at_floor: bool,
}

fn gk21(f: &dyn Fn(f64) -> f64, a: f64, b: f64, budget: &mut Budget) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = fc * WGK[10];
    let mut resabs = kron.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    let mut gauss = 0.0;
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        kron += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    budget.used += 21;
    let mean = 0.5 * kron;
    let mut resasc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = kron * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut err = ((kron - gauss) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * resabs;
    let mut at_floor = false;
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) && err <= floor {
        err = floor;
        at_floor = true;
    }
    if !value.is_finite() {
        err = f64::INFINITY;
        at_floor = false;
    }
    Panel { a, b, value, err, at_floor }
}

/// Globally adaptive Gauss–Kronrod integration of `f` over `[a, b]`.
///
/// The flag is false only when the budget ran out before every panel met
/// the target or reached its rounding floor.
fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, budget: &mut Budget) -> (f64, f64, bool) {
    if a == b {
        return (0.0, 0.0, true);
    }
    let mut active = vec![gk21(f, a, b, budget)];
    let mut settled: Vec<Panel> = Vec::new();
    loop {
        let total_err: f64 = active.iter().chain(settled.iter()).map(|p| p.err).sum();
        if total_err <= tol {
            let value = active.iter().chain(settled.iter()).map(|p| p.value).sum();
            return (value, total_err, true);
        }
        if active.is_empty() || budget.exhausted() {
            // every panel at its rounding floor counts as done; the caller
            // compares the summed estimate with its own target
            let value = active.iter().chain(settled.iter()).map(|p| p.value).sum();
            return (value, total_err, active.is_empty());
        }
        let (idx, _) = active
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .expect("non-empty");
        let worst = active.swap_remove(idx);
        if worst.at_floor {
            settled.push(worst);
            continue;
        }
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a.min(worst.b) && mid < worst.a.max(worst.b)) {
            settled.push(worst);
            continue;
        }
        let left = gk21(f, worst.a, mid, budget);
        let right = gk21(f, mid, worst.b, budget);
        active.push(left);
        active.push(right);
    }
}

/// `q^α − 1` computed as `expm1(α ln q)`.
#[inline]
fn pow_minus_one(q: f64, alpha: f64) -> f64 {
    (alpha * q.ln()).exp_m1()
}

/// `(1 + t)^α − 1` without cancellation near `t = 0`.
#[inline]
fn pow_minus_one_shifted(t: f64, alpha: f64) -> f64 {
    (alpha * t.ln_1p()).exp_m1()
}

#[inline]
fn trig(use_sine: bool, x: f64) -> f64 {
    if use_sine {
        x.sin()
    } else {
        x.cos()
    }
}

/// `∫_a^∞ envelope(q) trig(w q) dq`.
///
/// For `w > 0` the range is cut at the zeros of the trigonometric factor,
/// the resulting alternating partial sums are accelerated by repeated
/// pairwise averaging, and the error is read off the last two accelerated
/// values. For `w = 0` the substitution `q = a u^(-1/(decay-1))` maps the
/// tail onto `(0, 1]` with an integrand that stays bounded at `u → 0`.
pub fn oscillatory_tail(envelope: &dyn Fn(f64) -> f64, spec: TailSpec, tol: f64) -> Result<QuadResult, QuadError> {
    spec.validate()?;
    if !(tol > 0.0) {
        return Err(QuadError::InvalidInput(format!("tol = {tol}")));
    }
    let mut budget = Budget::new(DEFAULT_MAX_EVALS);
    Ok(tail_with_budget(envelope, spec, tol, &mut budget))
}

fn tail_with_budget(envelope: &dyn Fn(f64) -> f64, spec: TailSpec, tol: f64, budget: &mut Budget) -> QuadResult {
    let start = budget.used;
    if spec.w == 0.0 {
        let m = 1.0 / (spec.decay - 1.0);
        let a = spec.a;
        let mapped = move |u: f64| {
            let q = a * u.powf(-m);
            if !q.is_finite() {
                return 0.0;
            }
            let v = envelope(q) * a * m * u.powf(-m - 1.0);
            if v.is_finite() {
                v
            } else {
                0.0
            }
        };
        let (value, err, converged) = adaptive(&mapped, 0.0, 1.0, tol, budget);
        return QuadResult { value, abs_err_estimate: err, converged, evaluations: budget.used - start };
    }

    let w = spec.w;
    let phase = if spec.use_sine { 0.0 } else { 0.5 * PI };
    let zero = |k: f64| (phase + k * PI) / w;
    let mut k = ((spec.a * w - phase) / PI).ceil();
    if zero(k) <= spec.a {
        k += 1.0;
    }
    let integrand = |q: f64| envelope(q) * trig(spec.use_sine, w * q);
    let piece_tol = tol / 64.0;

    let (head, mut piece_err, mut all_ok) = {
        let (v, e, ok) = adaptive(&integrand, spec.a, zero(k), piece_tol, budget);
        (v, e, ok)
    };
    let mut partial = Vec::with_capacity(64);
    let mut running = head;
    let mut apexes: Vec<f64> = Vec::with_capacity(64);
    let mut scratch = Vec::with_capacity(64);
    let mut accel_err = f64::INFINITY;

    for j in 0..MAX_TAIL_PIECES {
        let lo = zero(k + j as f64);
        let hi = zero(k + j as f64 + 1.0);
        let (v, e, ok) = adaptive(&integrand, lo, hi, piece_tol, budget);
        running += v;
        piece_err += e;
        all_ok &= ok;
        partial.push(running);

        // apex of the averaging triangle over all partial sums so far
        scratch.clear();
        scratch.extend_from_slice(&partial);
        for level in 1..scratch.len() {
            for i in 0..scratch.len() - level {
                scratch[i] = 0.5 * (scratch[i] + scratch[i + 1]);
            }
        }
        apexes.push(scratch[0]);

        let n = apexes.len();
        if n >= 3 {
            let d1 = (apexes[n - 1] - apexes[n - 2]).abs();
            let d2 = (apexes[n - 2] - apexes[n - 3]).abs();
            accel_err = d1.max(d2);
            if n >= MIN_TAIL_PIECES && accel_err + piece_err <= tol {
                break;
            }
        }
        if budget.exhausted() {
            break;
        }
    }
    let abs_err = accel_err + piece_err;
    let value = *apexes.last().expect("at least one piece");
    QuadResult {
        value,
        abs_err_estimate: abs_err,
        converged: all_ok && abs_err <= tol,
        evaluations: budget.used - start,
    }
}

/// `PV ∫₀^∞ g(q) trig(w q) / (q^α − 1) dq` for bounded `g`.
pub fn pv_integrate(
    g: &dyn Fn(f64) -> f64,
    alpha: f64,
    w: f64,
    tol: f64,
    use_sine: bool,
) -> Result<QuadResult, QuadError> {
    pv_integrate_with(g, &PvOptions::new(alpha, w, tol, use_sine))
}

/// [`pv_integrate`] with explicit window, growth exponent of `g` and budget.
pub fn pv_integrate_with(g: &dyn Fn(f64) -> f64, opts: &PvOptions) -> Result<QuadResult, QuadError> {
    opts.validate()?;
    let PvOptions { alpha, w, tol, use_sine, .. } = *opts;
    let delta = opts.window.min(DEFAULT_WINDOW);
    let tail = TailSpec { w, decay: alpha - opts.g_growth, a: 1.0 + delta, use_sine };
    tail.validate()?;

    let mut budget = Budget::new(opts.max_evals);

    let lower = |q: f64| g(q) * trig(use_sine, w * q) / pow_minus_one(q, alpha);
    let (v_low, e_low, ok_low) = adaptive(&lower, 0.0, 1.0 - delta, 0.25 * tol, &mut budget);

    let pole_weight = g(1.0) * trig(use_sine, w) / alpha;
    let window = |t: f64| {
        let q = 1.0 + t;
        g(q) * trig(use_sine, w * q) / pow_minus_one_shifted(t, alpha) - pole_weight / t
    };
    let (v_l, e_l, ok_l) = adaptive(&window, -delta, 0.0, 0.125 * tol, &mut budget);
    let (v_r, e_r, ok_r) = adaptive(&window, 0.0, delta, 0.125 * tol, &mut budget);

    let envelope = |q: f64| g(q) / pow_minus_one(q, alpha);
    let tail_res = tail_with_budget(&envelope, tail, 0.5 * tol, &mut budget);

    let value = v_low + v_l + v_r + tail_res.value;
    let abs_err = e_low + e_l + e_r + tail_res.abs_err_estimate;
    Ok(QuadResult {
        value,
        abs_err_estimate: abs_err,
        converged: ok_low && ok_l && ok_r && tail_res.converged && abs_err <= tol,
        evaluations: budget.used,
    })
}
