use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use fractunnel_cli::config::parse_list;
use fractunnel_cli::{run, CliError, RawConfig, SweepConfig};

/// Reflection and transmission sweeps for fractional delta potentials.
#[derive(Parser, Debug)]
#[command(name = "fractunnel", version)]
struct Args {
    /// delta | double-delta | kernel | verify | figures
    #[arg(long)]
    mode: Option<String>,
    /// Figure preset for `figures` mode: 1, 2 or 3
    #[arg(long)]
    figure: Option<u8>,
    /// Comma-separated list
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    two_pi_gamma: Option<f64>,
    /// Comma-separated list
    #[arg(long)]
    mu: Option<String>,
    #[arg(long)]
    r_sep: Option<f64>,
    #[arg(long)]
    e_min: Option<f64>,
    #[arg(long)]
    e_max: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    /// linear | log
    #[arg(long)]
    scale: Option<String>,
    #[arg(long)]
    tol: Option<f64>,
    /// Write here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// `key = value` file; flags override it
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Args {
    fn into_raw(self) -> Result<(Option<PathBuf>, RawConfig), CliError> {
        let raw = RawConfig {
            mode: self.mode.as_deref().map(str::parse).transpose()?,
            figure: self.figure,
            alpha: self.alpha.as_deref().map(|s| parse_list("alpha", s)).transpose()?,
            two_pi_gamma: self.two_pi_gamma,
            mu: self.mu.as_deref().map(|s| parse_list("mu", s)).transpose()?,
            r_sep: self.r_sep,
            e_min: self.e_min,
            e_max: self.e_max,
            points: self.points,
            scale: self.scale.as_deref().map(str::parse).transpose()?,
            tol: self.tol,
            output: self.output,
        };
        Ok((self.config, raw))
    }
}

fn real_main() -> Result<i32, CliError> {
    let (config_path, flags) = Args::parse().into_raw()?;
    let base = match config_path {
        Some(p) => RawConfig::from_file(&p)?,
        None => RawConfig::default(),
    };
    let cfg = SweepConfig::resolve(base.merged(flags))?;
    let (text, code) = run(&cfg)?;
    match &cfg.output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(code)
}

fn main() -> ExitCode {
    match real_main() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
