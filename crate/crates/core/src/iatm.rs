//! Dual-window adaptive thresholding with a sensitivity gate.
//!
//! Each pixel's brightness is the mean of a small pixel window; its local
//! threshold is the mean of a larger threshold window. When the two means
//! are close (absolute difference below the sensitivity), the local contrast
//! is considered unreliable and the decision falls back to the image-wide
//! mean threshold. One integral build serves both windows.

use crate::error::{Error, Result};
use crate::global::global_mean;
use crate::integral::IntegralImage;
use crate::raster::{BinaryImage, GrayImage};

/// Tunable values: pixel-window side, threshold-window side, and the
/// sensitivity gate in intensity units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IatmParams {
    pixel_window: u32,
    threshold_window: u32,
    sensitivity: f64,
}

impl IatmParams {
    /// Both windows must be odd; the threshold window must be strictly
    /// larger than the pixel window (equal sides would force the absolute
    /// difference to zero everywhere, degenerating to a pure global
    /// threshold); sensitivity must be non-negative.
    pub fn new(pixel_window: u32, threshold_window: u32, sensitivity: f64) -> Result<Self> {
        if pixel_window == 0 || pixel_window % 2 == 0 {
            return Err(Error::InvalidParam(format!(
                "pixel window must be odd and positive, got {pixel_window}"
            )));
        }
        if threshold_window % 2 == 0 {
            return Err(Error::InvalidParam(format!(
                "threshold window must be odd, got {threshold_window}"
            )));
        }
        if threshold_window <= pixel_window {
            return Err(Error::InvalidParam(format!(
                "threshold window {threshold_window} must exceed pixel window {pixel_window}"
            )));
        }
        if !(sensitivity >= 0.0) {
            return Err(Error::InvalidParam(format!(
                "sensitivity must be >= 0, got {sensitivity}"
            )));
        }
        Ok(Self { pixel_window, threshold_window, sensitivity })
    }

    pub fn pixel_window(&self) -> u32 {
        self.pixel_window
    }

    pub fn threshold_window(&self) -> u32 {
        self.threshold_window
    }

    pub fn sensitivity(&self) -> f64 {
        self.sensitivity
    }
}

impl Default for IatmParams {
    fn default() -> Self {
        Self { pixel_window: 3, threshold_window: 15, sensitivity: 10.0 }
    }
}

/// Everything that went into one pixel's decision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PixelTrace {
    /// Mean of the pixel window.
    pub brightness: f64,
    /// Mean of the threshold window.
    pub local_threshold: f64,
    /// `|brightness - local_threshold|`.
    pub abs_diff: f64,
    /// Whether the gate diverted this pixel to the global threshold.
    pub used_global: bool,
    pub label: u8,
}

/// Mean brightness of the clamped pixel window centered at `(x, y)`.
/// Equals the raw pixel value when `side` is 1.
pub fn pixel_brightness(itg: &IntegralImage, x: u32, y: u32, side: u32) -> f64 {
    itg.window_mean(x, y, side).0
}

/// Local threshold: mean of the clamped threshold window centered at `(x, y)`.
pub fn local_threshold(itg: &IntegralImage, x: u32, y: u32, side: u32) -> f64 {
    itg.window_mean(x, y, side).0
}

/// Classifies every pixel with the dual-window rule.
///
/// With brightness `I`, local threshold `T_L`, and global mean `T_G`:
/// if `|I - T_L| >= sensitivity` the pixel is foreground iff `I >= T_L`;
/// otherwise the gate falls back to the global rule, foreground iff
/// `I >= T_G`. Ties are foreground on both branches.
pub fn classify(img: &GrayImage, params: &IatmParams) -> BinaryImage {
    run(img, params, None).0
}

/// Like [`classify`], also returning a per-pixel trace in row-major order.
pub fn classify_traced(img: &GrayImage, params: &IatmParams) -> (BinaryImage, Vec<PixelTrace>) {
    let (bin, traces) = run(img, params, Some(Vec::with_capacity(img.pixels().len())));
    (bin, traces.unwrap())
}

fn run(
    img: &GrayImage,
    params: &IatmParams,
    mut traces: Option<Vec<PixelTrace>>,
) -> (BinaryImage, Option<Vec<PixelTrace>>) {
    let itg = IntegralImage::build(img);
    let global = global_mean(img);
    let mut labels = Vec::with_capacity(img.pixels().len());
    for y in 0..img.height() {
        for x in 0..img.width() {
            let brightness = pixel_brightness(&itg, x, y, params.pixel_window);
            let local = local_threshold(&itg, x, y, params.threshold_window);
            let abs_diff = (brightness - local).abs();
            let used_global = abs_diff < params.sensitivity;
            let label = if used_global {
                u8::from(brightness >= global)
            } else {
                u8::from(brightness >= local)
            };
            labels.push(label);
            if let Some(t) = traces.as_mut() {
                t.push(PixelTrace {
                    brightness,
                    local_threshold: local,
                    abs_diff,
                    used_global,
                    label,
                });
            }
        }
    }
    (BinaryImage::from_labels(img.width(), img.height(), labels).unwrap(), traces)
}
