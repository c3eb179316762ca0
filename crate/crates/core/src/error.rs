use std::fmt;

/// Errors raised by the lattice, spectral, operator and harness layers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument violates an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// A query fell outside the range a representation table was built for.
    #[error("range error: {what} = {value} exceeds table limit {limit}")]
    Range {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    /// A lattice count no longer fits the integer width.
    #[error("overflow while counting r_{dim}({lambda})")]
    Overflow { dim: usize, lambda: u64 },

    /// The normalizing count N(lambda) vanished, so the average is undefined.
    #[error("undefined average: N_{arity}({lambda}) = 0 in dimension {dim}")]
    EmptySphere {
        dim: usize,
        arity: usize,
        lambda: u64,
    },

    /// An enumeration guard was exceeded.
    #[error("guard exceeded: {what} needs {needed}, limit {limit}")]
    Guard {
        what: &'static str,
        needed: u64,
        limit: u64,
    },

    /// Adaptive quadrature did not reach its tolerance.
    #[error("quadrature failed: {0}")]
    Quadrature(QuadratureFailure),

    /// A norm or ratio had a vanishing or infinite denominator.
    #[error("degenerate norm: {0}")]
    DegenerateNorm(String),

    #[error("empty input: {0}")]
    Empty(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Diagnostics attached to a non-converged quadrature.
#[derive(Debug, Clone)]
pub struct QuadratureFailure {
    pub estimate: (f64, f64),
    pub error: f64,
    pub tolerance: f64,
    pub intervals: usize,
    pub bounds: (f64, f64),
}

impl fmt::Display for QuadratureFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "on [{}, {}] estimate {}+{}i with error {:e} > tolerance {:e} after {} intervals",
            self.bounds.0,
            self.bounds.1,
            self.estimate.0,
            self.estimate.1,
            self.error,
            self.tolerance,
            self.intervals
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
