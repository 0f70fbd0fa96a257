use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hartmann_susy::model::magnetic_to_capital_m;
use hartmann_susy::oracle::MIN_POINTS;
use hartmann_susy::HartmannParams;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Default analytic-vs-oracle eigenvalue tolerance (relative).
pub const DEFAULT_EIGENVALUE_TOL: f64 = 1e-4;
/// Default bound on symbolic residuals.
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-10;
/// Default absolute tolerance on the Morse partner spectra.
pub const DEFAULT_MORSE_TOL: f64 = 1e-3;

#[derive(Debug, Parser)]
#[command(
    name = "hartmann",
    version,
    about = "SUSY ladder-operator and Morse-partner solvers for the Hartmann potential"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Dimensionless strength η of the potential.
    #[arg(
        long,
        global = true,
        default_value_t = 1.0,
        allow_negative_numbers = true
    )]
    pub eta: f64,

    /// Dimensionless range parameter σ.
    #[arg(
        long,
        global = true,
        default_value_t = 1.0,
        allow_negative_numbers = true
    )]
    pub sigma: f64,

    /// Magnetic quantum number.
    #[arg(
        long,
        global = true,
        default_value_t = 0,
        allow_negative_numbers = true
    )]
    pub m: i64,

    /// Use this |M| instead of sqrt(m² + η²σ²), e.g. 0 for the
    /// hydrogen-like limit.
    #[arg(long = "capital-m", global = true, allow_negative_numbers = true)]
    pub capital_m: Option<f64>,

    /// Number of levels N = |M|+1, …, |M|+depth.
    #[arg(long, global = true, default_value_t = 3)]
    pub depth: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Override every tolerance of the run.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub tol: Option<f64>,

    /// Number of oracle grid points.
    #[arg(long = "grid-points", global = true)]
    pub grid_points: Option<usize>,

    /// Outer edge of the radial oracle grid.
    #[arg(long = "grid-max", global = true, allow_negative_numbers = true)]
    pub grid_max: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra,
    Halfline,
    Fullline,
    All,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Energy table with finite-difference cross-check.
    Spectrum,
    /// Sampled u_{N,L}(r) and R_{N,L}(r).
    Eigenfunction {
        /// Level offset: N = |M| + level.
        #[arg(long, default_value_t = 1)]
        level: u32,
        /// Angular offset: L = |M| + ell.
        #[arg(long, default_value_t = 0)]
        ell: u32,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Largest sampled radius (default 8N²/γ).
        #[arg(long = "r-max")]
        r_max: Option<f64>,
    },
    /// Run invariant suites and report every residual.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Full-line partner pairing at level N = |M| + level.
    Partner {
        #[arg(long, default_value_t = 3)]
        level: u32,
    },
}

/// Validated run parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub eta: f64,
    pub sigma: f64,
    pub m: i64,
    pub capital_m: f64,
    pub gamma: f64,
    pub depth: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub tol: Option<f64>,
    pub grid_points: Option<usize>,
    pub grid_max: Option<f64>,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl RunConfig {
    pub fn from_args(args: &GlobalArgs) -> Result<Self, CliError> {
        let params = HartmannParams::new(args.eta, args.sigma)?;
        let capital_m = match args.capital_m {
            Some(c) if c.is_finite() && c >= 0.0 => c,
            Some(c) => {
                return Err(invalid(format!(
                    "--capital-m must be non-negative, got {c}"
                )))
            }
            None => magnetic_to_capital_m(args.m, &params),
        };
        if args.depth == 0 {
            return Err(invalid("--depth must be at least 1"));
        }
        if let Some(t) = args.tol {
            if !(t.is_finite() && t > 0.0) {
                return Err(invalid(format!("--tol must be positive, got {t}")));
            }
        }
        if let Some(n) = args.grid_points {
            if n < MIN_POINTS {
                return Err(invalid(format!(
                    "--grid-points must be at least {MIN_POINTS}"
                )));
            }
        }
        if let Some(x) = args.grid_max {
            if !(x.is_finite() && x > 0.0) {
                return Err(invalid(format!("--grid-max must be positive, got {x}")));
            }
        }
        Ok(Self {
            eta: args.eta,
            sigma: args.sigma,
            m: args.m,
            capital_m,
            gamma: params.gamma(),
            depth: args.depth,
            format: args.format,
            out: args.out.clone(),
            tol: args.tol,
            grid_points: args.grid_points,
            grid_max: args.grid_max,
        })
    }

    pub fn eigenvalue_tol(&self) -> f64 {
        self.tol.unwrap_or(DEFAULT_EIGENVALUE_TOL)
    }

    pub fn residual_tol(&self) -> f64 {
        self.tol.unwrap_or(DEFAULT_RESIDUAL_TOL)
    }

    pub fn morse_tol(&self) -> f64 {
        self.tol.unwrap_or(DEFAULT_MORSE_TOL)
    }

    /// `N = |M| + level`.
    pub fn level(&self, offset: u32) -> f64 {
        self.capital_m + offset as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("hartmann").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn defaults() {
        let cli = parse(&["spectrum"]);
        let cfg = RunConfig::from_args(&cli.global).unwrap();
        assert_eq!(cfg.depth, 3);
        assert_eq!(cfg.gamma, 1.0);
        assert!((cfg.capital_m - 1.0).abs() < 1e-15);
        assert_eq!(cfg.format, Format::Text);
    }

    #[test]
    fn capital_m_from_magnetic_number() {
        let cli = parse(&["--eta", "1", "--sigma", "1.2", "--m", "1", "spectrum"]);
        let cfg = RunConfig::from_args(&cli.global).unwrap();
        assert!((cfg.capital_m - 2.44f64.sqrt()).abs() < 1e-12);
        assert!((cfg.gamma - 1.44).abs() < 1e-12);
    }

    #[test]
    fn negative_magnetic_number() {
        let cli = parse(&["spectrum", "--m", "-2"]);
        assert_eq!(cli.global.m, -2);
    }

    #[test]
    fn rejects_invalid_values() {
        for args in [
            &["--eta", "0", "spectrum"][..],
            &["--depth", "0", "spectrum"],
            &["--tol", "-1", "spectrum"],
            &["--grid-points", "10", "spectrum"],
            &["--capital-m", "-1", "spectrum"],
        ] {
            let cli = parse(args);
            assert!(RunConfig::from_args(&cli.global).is_err(), "{args:?}");
        }
    }

    #[test]
    fn unknown_suite_is_a_parse_error() {
        assert!(Cli::try_parse_from(["hartmann", "verify", "--suite", "nope"]).is_err());
    }
}
