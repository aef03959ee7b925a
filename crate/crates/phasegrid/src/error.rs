//! Crate-wide error type.
//!
//! Every fallible operation returns [`Error`]. The CLI maps variants onto the
//! documented exit codes: configuration problems exit with 1, numerical
//! failures with 2.

use thiserror::Error;

/// Unified error enumeration for the whole crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied argument violates a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The requested operation is not defined for the given inputs
    /// (e.g. closed-form levels for a potential that has none).
    #[error("not available: {0}")]
    NotAvailable(String),

    /// A coordinate lies outside the domain on which a basis is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A metric matrix that must be positive definite is not; carries the
    /// smallest eigenvalue found.
    #[error("metric not positive definite (smallest eigenvalue {lambda_min:e})")]
    MetricSingular { lambda_min: f64 },

    /// The Gaussian frame overlap is singular beyond what the truncated
    /// eigenvalue regularization can absorb; carries the condition number.
    #[error("ill-conditioned frame (cond S = {cond_s:e})")]
    IllConditionedFrame { cond_s: f64 },

    /// A Hermitian solve could not be regularized (no usable spectrum).
    #[error("ill-conditioned solve: {0}")]
    IllConditioned(String),

    /// A pruning rule retained no lattice functions.
    #[error("empty prune mask: {0}")]
    EmptyMask(String),

    /// Configuration file parse or validation failure.
    #[error("config error: {0}")]
    Config(String),

    /// Dense linear-algebra backend failure (LAPACK status, shape mismatch).
    #[error("linear algebra backend: {0}")]
    Backend(String),

    /// Filesystem failure while writing reports.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Exit code for the CLI: 1 for configuration errors, 2 for everything
    /// that goes wrong after a valid configuration was accepted.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 1,
            _ => 2,
        }
    }
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
