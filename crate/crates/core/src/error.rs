//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A coin parameter left the closed unit disk.
    #[error("coin parameter has magnitude {magnitude} > 1")]
    CoinOutOfRange { magnitude: f64 },

    /// A continued-fraction or Mobius step hit a vanishing denominator.
    #[error("singular evaluation: {0}")]
    Singular(String),

    /// A radial limit or extrapolation failed to settle.
    #[error("numerical limit did not converge: {0}")]
    NonConvergent(String),

    /// Series division by a non-invertible constant term, degree mismatch, etc.
    #[error("invalid series operation: {0}")]
    Series(String),

    /// Precondition violation (bad initial state, unsupported combination, ...).
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
