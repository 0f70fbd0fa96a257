use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("inconsistent quantum numbers: {0}")]
    InconsistentQuantumNumbers(String),

    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),

    #[error("function is not square-integrable at the origin (leading power {leading_power})")]
    OriginIntegrability { leading_power: f64 },

    #[error("divergent integral: combined leading power {leading_power} must exceed -1")]
    DivergentIntegral { leading_power: f64 },

    #[error("cannot normalize the zero function")]
    ZeroFunction,

    #[error("log_gamma requires a positive argument, got {0}")]
    GammaDomain(f64),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),

    #[error("eigenvalue {index} did not converge under grid doubling (moved {change:e}, limit {limit:e})")]
    NonConvergence {
        index: usize,
        change: f64,
        limit: f64,
    },

    #[error("requested {requested} bound states, found {found}")]
    InsufficientBoundStates { requested: usize, found: usize },

    #[error("quadrature did not converge on [{a}, {b}] (last error estimate {estimate:e})")]
    QuadratureNonConvergence { a: f64, b: f64, estimate: f64 },

    #[error("spectra cannot be paired: {left} vs {right} eigenvalues")]
    SpectrumLengthMismatch { left: usize, right: usize },

    #[error("no SUSY partner below N = {0} (requires N > 1)")]
    NoPartner(f64),
}
