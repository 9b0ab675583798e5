//! Crate error type and exit-code mapping.

use thiserror::Error;

/// Unified error type for the crate.
///
/// Every failure is classified so that callers (in particular the CLI) can map
/// it to a process exit code without string matching.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed user input: bad types, invalid tree moves, out-of-range
    /// parameters.
    #[error("validation: {0}")]
    Validation(String),

    /// A configured resource cap was exceeded.
    #[error("resource: {what} exceeds cap {cap}")]
    Resource { what: String, cap: usize },

    /// Precision escalation ran out of budget before a certified answer.
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    /// A deterministic retry loop (primitive element, invariant choice) ran
    /// out of candidates.
    #[error("retries exhausted: {0}")]
    RetryExhausted(String),

    /// The ideal attached to a type is not zero-dimensional.
    #[error("positive-dimensional system: {0}")]
    PositiveDimension(String),

    /// An operation was asked outside its supported domain.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Ray continuation failed (branch ambiguity, budget exhausted).
    #[error("ray tracing: {0}")]
    Tracing(String),

    /// Reconstructed adjacency data violates tree invariants.
    #[error("reconstruction: {0}")]
    Reconstruction(String),

    /// Internal consistency violation; indicates a bug.
    #[error("internal: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code for this error class.
    ///
    /// 0 is success, 2 validation, 3 resource/precision, 4 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_)
            | Error::PositiveDimension(_)
            | Error::Unsupported(_) => 2,
            Error::Resource { .. }
            | Error::PrecisionExhausted(_)
            | Error::RetryExhausted(_)
            | Error::Tracing(_) => 3,
            Error::Reconstruction(_) | Error::Internal(_) => 4,
        }
    }
}
