//! Crate-wide error type.

use thiserror::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by field synthesis, warping, color jitter, spectral
/// estimation, and the augmentation pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("grid dimensions must be at least 1x1")]
    ZeroDimension,

    #[error("grid dimensions overflow the address space")]
    DimensionOverflow,

    #[error("parameter `{name}` must be finite")]
    NonFiniteParameter { name: &'static str },

    #[error("parameter `{name}` must be non-negative")]
    NegativeParameter { name: &'static str },

    #[error("dimension mismatch: expected {expected_width}x{expected_height}, got {width}x{height}")]
    DimensionMismatch {
        expected_width: usize,
        expected_height: usize,
        width: usize,
        height: usize,
    },

    #[error("value buffer holds {got} entries, expected {expected}")]
    ValueCountMismatch { expected: usize, got: usize },

    #[error("field contains a non-finite value")]
    NonFiniteValue,

    #[error("field magnitude exceeds its amplitude bound")]
    FieldBoundExceeded,

    #[error("image channel values must lie in [0, 1]")]
    PixelOutOfRange,

    #[error("composition requires at least one grid")]
    EmptyComposition,

    #[error("non-finite affine entry at pixel ({x}, {y})")]
    NonFiniteMatrix { x: usize, y: usize },

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("field of {width}x{height} is too small for spectrum estimation (need at least 4x4)")]
    FieldTooSmall { width: usize, height: usize },

    #[error("requested {requested} spectral bins but only {available} annuli are resolvable")]
    BinCount { requested: usize, available: usize },

    #[error("spectra have mismatched bin layouts and cannot be averaged")]
    MismatchedSpectra,

    #[error("power-law fit needs at least two bins with positive power inside the fit range")]
    InsufficientFitData,

    #[error("all spectral bins inside the fit range carry zero power")]
    ZeroPowerInRange,

    #[error("image {index}: {source}")]
    BatchItem { index: usize, source: Box<Error> },
}
