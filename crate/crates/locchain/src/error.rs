//! Crate-wide error type.
//!
//! Every fallible operation returns [`Error`]. Domain errors name the violated
//! precondition so the CLI can surface them verbatim (exit code 2), while
//! anything unexpected (I/O, solver failure) maps to exit code 1.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on an operation's inputs was violated.
    /// The message names the offending parameter and its admissible range.
    #[error("invalid input: {0}")]
    Domain(String),

    /// A vector that must have unit norm did not.
    #[error("state vector is not normalized: |norm^2 - 1| = {deviation:.3e}")]
    NotNormalized { deviation: f64 },

    /// An eigenvector had no dominant site, so it cannot be matched to a
    /// renormalized on-site level.
    #[error(
        "eigenvector {eigenindex} is not site-localized \
         (largest weight {max_weight:.4} <= 1/2); cannot assign it to a site"
    )]
    NotLocalized { eigenindex: usize, max_weight: f64 },

    /// A many-body sector would exceed the dense-diagonalization budget.
    #[error(
        "sector dimension {dim} exceeds the dense-solve guard {limit} \
         (the dense matrix alone would take {mib} MiB)"
    )]
    SizeGuard { dim: usize, limit: usize, mib: u64 },

    /// A root-finding target lies outside the attainable range.
    #[error("target {target} is unattainable: attainable range is [{min:.4}, {max:.4}]")]
    TargetUnattainable { target: f64, min: f64, max: f64 },

    /// The eigensolver failed to converge (should not happen for the
    /// well-conditioned symmetric matrices built here).
    #[error("symmetric eigensolver failed: {0}")]
    Solver(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("encode error: {0}")]
    Encode(String),
}

impl Error {
    /// Shorthand for a named precondition violation.
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
