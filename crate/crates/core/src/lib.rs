//! Image binarization: global, color, and adaptive thresholding built on
//! constant-time window sums, plus contour-accuracy evaluation against
//! ground-truth masks.
//!
//! The adaptive methods share one summed-area table per image; all types are
//! immutable after construction and every operation is a pure function, so
//! everything here is safe to use concurrently without synchronization.

pub mod adaptive;
pub mod error;
pub mod global;
pub mod iatm;
pub mod integral;
pub mod metrics;
pub mod raster;

pub use error::{Error, Result};
