use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("truncated product did not converge within {max_terms} factors")]
    TruncationFailure { max_terms: usize },

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("{what}: argument within {distance:.3e} of a pole (threshold {threshold:.1e})")]
    PoleProximity {
        what: &'static str,
        distance: f64,
        threshold: f64,
    },

    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}
