//! Error type shared by every module in the crate.

use std::path::PathBuf;

/// All failure modes surfaced by this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("file not found: {0}")]
    FileNotFound(PathBuf),
    #[error("malformed file: {0}")]
    MalformedFile(String),
    #[error("unsupported depth: {0}")]
    UnsupportedDepth(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid image geometry: {0}")]
    InvalidGeometry(String),
    #[error("invalid sample: {0}")]
    InvalidSample(String),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("invalid variance {0}; expected 0 < v <= 1")]
    InvalidVariance(f64),
    #[error("invalid window size {0}: must be an odd integer >= 1")]
    InvalidWindow(usize),
    #[error("window size {size} too large for a {width}x{height} image")]
    WindowTooLarge {
        size: usize,
        width: usize,
        height: usize,
    },
    #[error("missing series: {0}")]
    MissingSeries(String),
    #[error("invalid config: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
