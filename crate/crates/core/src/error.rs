use thiserror::Error;

/// Errors raised by kernel evaluation, quadrature and interpolation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension n = {0} is not admissible (need n >= 2)")]
    Dimension(f64),

    #[error("{what} = {value} is outside {range}")]
    Domain {
        what: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("kernel derivative is undefined at the kink r = t = {0}")]
    Kink(f64),

    #[error("invalid radial profile `{label}`: {reason}")]
    Profile { label: String, reason: String },

    #[error("invalid quadrature spec: {0}")]
    Spec(String),

    #[error("envelope power {power} of `{label}` must be below {limit} for this integral to exist")]
    NonIntegrable {
        label: String,
        power: f64,
        limit: f64,
    },

    #[error(
        "quadrature did not converge after {subdivisions} subdivisions \
         (estimate {estimate:e}, error {error:e}, tolerance {tolerance:e})"
    )]
    NonConvergence {
        estimate: f64,
        error: f64,
        tolerance: f64,
        subdivisions: usize,
    },

    #[error("integrand is not finite at r = {0}")]
    NonFinite(f64),

    #[error("node and value lists differ in length ({nodes} vs {values})")]
    LengthMismatch { nodes: usize, values: usize },

    #[error("duplicate node t = {0}")]
    DuplicateNode(f64),

    #[error(
        "gram system is numerically singular (condition estimate {condition:e}); \
         jitter tried: {jitter_history:?}"
    )]
    Singular {
        condition: f64,
        jitter_history: Vec<f64>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, value: f64, range: &'static str) -> Error {
    Error::Domain { what, value, range }
}
