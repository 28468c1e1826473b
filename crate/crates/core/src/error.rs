use thiserror::Error;

/// Error type shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the domain of an operation (bad position, wrong order
    /// kind, non-dominant weight, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A descriptor failed validation.
    #[error("validation error: {0}")]
    Validation(String),

    /// A configured cap (dimension, solver size) was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// No block decomposition exists under the requested strategy.
    #[error("decomposition error: {0}")]
    Decomposition(String),

    /// Operation not defined for this descriptor variant.
    #[error("unsupported variant: {0}")]
    Unsupported(String),

    /// An internal exact-arithmetic cross-check failed. Signals a bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),

    /// Descriptor document could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
