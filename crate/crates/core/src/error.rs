//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by signal processing, metrics, corpus handling,
/// and the evaluation protocol.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violated an operation's precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Two signals cannot be compared (length or sample-rate mismatch).
    #[error("pair mismatch: {0}")]
    PairMismatch(String),

    /// A signal has no usable energy for the requested operation.
    #[error("degenerate signal: {0}")]
    DegenerateSignal(String),

    /// A frequency band does not fit below the Nyquist frequency.
    #[error("band out of range: center {center} Hz, upper edge {upper_edge} Hz exceeds Nyquist {nyquist} Hz")]
    BandOutOfRange {
        center: f64,
        upper_edge: f64,
        nyquist: f64,
    },

    /// A manifest file failed validation; `line` is 1-based and counts the header.
    #[error("manifest format error at line {line}: {message}")]
    ManifestFormat { line: u64, message: String },

    /// An audio file uses an encoding outside the supported set.
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),

    /// Not enough entries to honor a sampling request.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// A value distribution cannot be standardized or normalized.
    #[error("degenerate distribution: {0}")]
    DegenerateDistribution(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
