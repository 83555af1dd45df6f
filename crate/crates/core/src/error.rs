use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("series has a non-invertible constant term")]
    NonInvertible,
    #[error("inner series of a composition must have zero constant term")]
    CompositionDomain,
    #[error("coefficient derivation failed at order {order}: {reason}")]
    DerivationFailure { order: usize, reason: String },
    #[error("grouped form `{form}` does not expand to the determinant polynomial")]
    SymbolicInconsistency { form: String },
    #[error("numeric failure on [{lo}, {hi}]: {reason}")]
    NumericFailure { lo: f64, hi: f64, reason: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("pipeline step `{step}` failed: {reason}")]
    PipelineFailure { step: String, reason: String },
}
