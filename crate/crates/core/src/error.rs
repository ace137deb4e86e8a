//! Crate-wide error types.

use thiserror::Error;

/// Errors produced by parameter validation and metric preconditions.
#[derive(Debug, Error, PartialEq)]
pub enum Error {
    /// A parameter violates its documented range or structural requirement.
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    /// Two images that must share dimensions do not.
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(u32, u32, u32, u32),
    /// A contour metric was asked for on an image with no edge pixels.
    #[error("no contour pixels in {0} image")]
    NoContour(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
