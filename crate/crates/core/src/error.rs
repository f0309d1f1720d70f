use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes shared by every module.
///
/// The variants separate caller mistakes (`Domain`, `Configuration`) from
/// numerical conditions that are a property of the physics at the requested
/// point (`Resonance`, `Pole`, `Degenerate`) and from analysis failures on
/// computed data (`NotFound`, `Truncation`).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("singularity: {0}")]
    Singularity(String),
    #[error("outside validity range: {0}")]
    Validity(String),
    #[error("configuration error: {0}")]
    Configuration(String),
    #[error("degenerate matrix: {0}")]
    Degenerate(String),
    #[error("resonance pole: {0}")]
    Resonance(String),
    #[error("response pole: {0}")]
    Pole(String),
    #[error("peak not found: {0}")]
    NotFound(String),
    #[error("truncated feature: {0}")]
    Truncation(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by invalid inputs rather than numerics.
    pub fn is_validation(&self) -> bool {
        matches!(self, Error::Domain(_) | Error::Configuration(_))
    }
}
