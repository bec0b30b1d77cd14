use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid window [{lo}, {hi}]: {reason}")]
    InvalidWindow { lo: u64, hi: u64, reason: &'static str },
    /// An argument would leave the supported integer range `[1, 2^63 - 1]`.
    #[error("range error: {0}")]
    Range(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid query: {0}")]
    Query(String),
    #[error("resource guard: {0}")]
    Guard(String),
    #[error("cache: {0}")]
    Cache(String),
}
