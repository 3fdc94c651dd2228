use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Delta,
    DoubleDelta,
    Kernel,
    Verify,
    Figures,
}

impl FromStr for Mode {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "delta" => Ok(Mode::Delta),
            "double-delta" => Ok(Mode::DoubleDelta),
            "kernel" => Ok(Mode::Kernel),
            "verify" => Ok(Mode::Verify),
            "figures" => Ok(Mode::Figures),
            other => Err(CliError::Validation(format!("unknown mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

impl FromStr for Scale {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "linear" => Ok(Scale::Linear),
            "log" => Ok(Scale::Log),
            other => Err(CliError::Validation(format!("unknown scale `{other}`"))),
        }
    }
}

/// Settings as read from a config file or flags. `None` means "not given".
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawConfig {
    pub mode: Option<Mode>,
    pub figure: Option<u8>,
    pub alpha: Option<Vec<f64>>,
    pub two_pi_gamma: Option<f64>,
    pub mu: Option<Vec<f64>>,
    pub r_sep: Option<f64>,
    pub e_min: Option<f64>,
    pub e_max: Option<f64>,
    pub points: Option<usize>,
    pub scale: Option<Scale>,
    pub tol: Option<f64>,
    pub output: Option<PathBuf>,
}

fn parse_num<T: FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    v.trim().parse().map_err(|_| CliError::Validation(format!("bad value for `{key}`: `{v}`")))
}

pub fn parse_list(key: &str, v: &str) -> Result<Vec<f64>, CliError> {
    v.split(',').filter(|s| !s.trim().is_empty()).map(|s| parse_num(key, s)).collect()
}

impl RawConfig {
    /// Parse `key = value` lines. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = RawConfig::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Validation(format!("line {}: expected `key = value`", lineno + 1)))?;
            cfg.set(key.trim(), value.trim())?;
        }
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn set(&mut self, key: &str, v: &str) -> Result<(), CliError> {
        let key = key.replace('_', "-");
        match key.as_str() {
            "mode" => self.mode = Some(v.parse()?),
            "figure" => self.figure = Some(parse_num(&key, v)?),
            "alpha" => self.alpha = Some(parse_list(&key, v)?),
            "two-pi-gamma" => self.two_pi_gamma = Some(parse_num(&key, v)?),
            "mu" => self.mu = Some(parse_list(&key, v)?),
            "r-sep" => self.r_sep = Some(parse_num(&key, v)?),
            "e-min" => self.e_min = Some(parse_num(&key, v)?),
            "e-max" => self.e_max = Some(parse_num(&key, v)?),
            "points" => self.points = Some(parse_num(&key, v)?),
            "scale" => self.scale = Some(v.parse()?),
            "tol" => self.tol = Some(parse_num(&key, v)?),
            "output" => self.output = Some(PathBuf::from(v)),
            _ => return Err(CliError::Validation(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    /// Fields set in `over` win.
    pub fn merged(self, over: RawConfig) -> RawConfig {
        RawConfig {
            mode: over.mode.or(self.mode),
            figure: over.figure.or(self.figure),
            alpha: over.alpha.or(self.alpha),
            two_pi_gamma: over.two_pi_gamma.or(self.two_pi_gamma),
            mu: over.mu.or(self.mu),
            r_sep: over.r_sep.or(self.r_sep),
            e_min: over.e_min.or(self.e_min),
            e_max: over.e_max.or(self.e_max),
            points: over.points.or(self.points),
            scale: over.scale.or(self.scale),
            tol: over.tol.or(self.tol),
            output: over.output.or(self.output),
        }
    }
}

/// A fully resolved sweep.
///
/// For `figures` the range is `E/U` (figure 1) or `λR/2ħ` (figures 2 and 3).
/// For `kernel` it is the `w` range.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub mode: Mode,
    pub figure: u8,
    pub alpha: Vec<f64>,
    pub two_pi_gamma: f64,
    pub mu: Vec<f64>,
    pub r_sep: f64,
    pub e_min: f64,
    pub e_max: f64,
    pub points: usize,
    pub scale: Scale,
    pub tol: f64,
    pub output: Option<PathBuf>,
}

pub const DEFAULT_ALPHAS: [f64; 4] = [1.2, 1.5, 1.8, 2.0];

impl SweepConfig {
    pub fn resolve(raw: RawConfig) -> Result<Self, CliError> {
        let mode = raw.mode.unwrap_or(Mode::Delta);
        let figure = raw.figure.unwrap_or(1);
        // (alpha, 2πγ, mu, range, points, scale)
        let (alpha, tpg, mu, range, points, scale) = match (mode, figure) {
            (Mode::Figures, 1) => (DEFAULT_ALPHAS.to_vec(), 10.0, vec![1.0], (1e-9, 1e3), 200, Scale::Log),
            (Mode::Figures, 2) => {
                (DEFAULT_ALPHAS.to_vec(), 10.0, vec![1.0], (0.01, 2.0 * std::f64::consts::PI), 400, Scale::Linear)
            }
            (Mode::Figures, 3) => {
                (vec![1.8], 20.0, vec![0.5, 1.0, 2.0], (0.01, 2.0 * std::f64::consts::PI), 400, Scale::Linear)
            }
            (Mode::Figures, f) => return Err(CliError::Validation(format!("no figure {f}"))),
            (Mode::Kernel, _) => (DEFAULT_ALPHAS.to_vec(), 10.0, vec![1.0], (0.0, 20.0), 101, Scale::Linear),
            _ => (DEFAULT_ALPHAS.to_vec(), 10.0, vec![1.0], (1e-3, 1e3), 100, Scale::Log),
        };
        let r_default = if mode == Mode::DoubleDelta || (mode == Mode::Figures && figure > 1) { 1.0 } else { 0.0 };
        let cfg = SweepConfig {
            mode,
            figure,
            alpha: raw.alpha.unwrap_or(alpha),
            two_pi_gamma: raw.two_pi_gamma.unwrap_or(tpg),
            mu: raw.mu.unwrap_or(mu),
            r_sep: raw.r_sep.unwrap_or(r_default),
            e_min: raw.e_min.unwrap_or(range.0),
            e_max: raw.e_max.unwrap_or(range.1),
            points: raw.points.unwrap_or(points),
            scale: raw.scale.unwrap_or(scale),
            tol: raw.tol.unwrap_or(1e-10),
            output: raw.output,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Validation(m));
        if self.mode == Mode::Verify {
            return Ok(());
        }
        if self.alpha.is_empty() {
            return bad("alpha list is empty".into());
        }
        if let Some(a) = self.alpha.iter().find(|a| !(**a > 1.0 && **a <= 2.0)) {
            return bad(format!("alpha = {a} is outside (1, 2]"));
        }
        if self.points < 2 {
            return bad(format!("points = {} < 2", self.points));
        }
        if self.e_min >= self.e_max || !self.e_min.is_finite() || !self.e_max.is_finite() {
            return bad(format!("need e_min < e_max, got {} and {}", self.e_min, self.e_max));
        }
        if self.scale == Scale::Log && self.e_min <= 0.0 {
            return bad("log scale needs e_min > 0".into());
        }
        if self.mu.is_empty() || self.mu.iter().any(|m| *m == 0.0 || !m.is_finite()) {
            return bad("mu must be a nonempty list of nonzero values".into());
        }
        if !(self.two_pi_gamma.is_finite() && self.two_pi_gamma != 0.0) {
            return bad(format!("two_pi_gamma = {}", self.two_pi_gamma));
        }
        if !(self.r_sep >= 0.0 && self.r_sep.is_finite()) {
            return bad(format!("r_sep = {}", self.r_sep));
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                match self.scale {
                    Scale::Linear => self.e_min + t * (self.e_max - self.e_min),
                    Scale::Log => (self.e_min.ln() + t * (self.e_max / self.e_min).ln()).exp(),
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let file = RawConfig::parse("# sweep\nmode = double-delta\nalpha = 1.5, 1.8 # two\nmu=2\npoints = 10\n").unwrap();
        let mut flags = RawConfig::default();
        flags.set("points", "5").unwrap();
        let cfg = SweepConfig::resolve(file.merged(flags)).unwrap();
        assert_eq!(cfg.mode, Mode::DoubleDelta);
        assert_eq!(cfg.alpha, vec![1.5, 1.8]);
        assert_eq!(cfg.mu, vec![2.0]);
        assert_eq!(cfg.points, 5);
        assert_eq!(cfg.r_sep, 1.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RawConfig::parse("alpha 1.5").is_err());
        assert!(RawConfig::parse("colour = red").is_err());
        for raw in [
            RawConfig { alpha: Some(vec![2.5]), ..Default::default() },
            RawConfig { points: Some(1), ..Default::default() },
            RawConfig { e_min: Some(5.0), e_max: Some(1.0), ..Default::default() },
        ] {
            assert!(SweepConfig::resolve(raw).is_err());
        }
    }

    #[test]
    fn grid_endpoints() {
        let cfg = SweepConfig::resolve(RawConfig { points: Some(7), ..Default::default() }).unwrap();
        let g = cfg.grid();
        assert_eq!(g.len(), 7);
        assert!((g[0] - 1e-3).abs() < 1e-18 && (g[6] - 1e3).abs() < 1e-9);
    }
}
