//! Percent-of-local-mean adaptive thresholding.
//!
//! Two variants: a sequential moving-average pass whose output depends on
//! scan order, and a windowed version backed by the integral image that
//! compares each pixel against the mean of the square window centered on it.

use crate::error::{Error, Result};
use crate::integral::IntegralImage;
use crate::raster::{BinaryImage, GrayImage};

/// Parameters for [`bradley_threshold`]: window side length and the percent
/// below the local mean at which a pixel turns black.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveParams {
    window: u32,
    percent: f64,
}

impl AdaptiveParams {
    /// `window` must be odd and positive; `percent` must lie in `[0, 100)`.
    pub fn new(window: u32, percent: f64) -> Result<Self> {
        if window == 0 || window % 2 == 0 {
            return Err(Error::InvalidParam(format!(
                "window side must be odd and positive, got {window}"
            )));
        }
        if !(0.0..100.0).contains(&percent) {
            return Err(Error::InvalidParam(format!(
                "percent must be in [0, 100), got {percent}"
            )));
        }
        Ok(Self { window, percent })
    }

    pub fn window(&self) -> u32 {
        self.window
    }

    pub fn percent(&self) -> f64 {
        self.percent
    }
}

/// Default window side for an image of the given width: the largest odd
/// value at most `max(3, width / 8)`.
pub fn default_window(width: u32) -> u32 {
    let m = (width / 8).max(3);
    if m % 2 == 1 {
        m
    } else {
        m - 1
    }
}

/// Sequential percent-of-running-mean threshold.
///
/// Scans the image in raster order keeping an exponential running average
/// `g <- g * (1 - 1/span) + pixel / span`, seeded at mid-gray (127). After
/// each update the pixel is labeled 0 iff it falls more than `percent`
/// below the average, i.e. iff `pixel < g * (100 - percent) / 100`.
///
/// The result depends on the traversal order by construction; see
/// [`bradley_threshold`] for the order-independent variant.
pub fn moving_average_threshold(img: &GrayImage, span: u32, percent: f64) -> Result<BinaryImage> {
    if span == 0 {
        return Err(Error::InvalidParam("span must be positive".into()));
    }
    if !(0.0..100.0).contains(&percent) {
        return Err(Error::InvalidParam(format!(
            "percent must be in [0, 100), got {percent}"
        )));
    }
    let span = f64::from(span);
    let keep = 1.0 - 1.0 / span;
    let mut g = 127.0f64;
    let labels = img
        .pixels()
        .iter()
        .map(|&p| {
            g = g * keep + f64::from(p) / span;
            u8::from(!(f64::from(p) < g * (100.0 - percent) / 100.0))
        })
        .collect();
    Ok(BinaryImage::from_labels(img.width(), img.height(), labels).unwrap())
}

/// Windowed percent-of-mean threshold over an integral image.
///
/// For each pixel the square window of side `params.window()` is clamped to
/// the image bounds; with `count` in-bounds pixels summing to `sum`, the
/// pixel is labeled 0 iff `pixel * count <= sum * (100 - percent) / 100`
/// (ties go to black). The comparison is done on exact products with no
/// rounding of the right-hand side. Two passes total: one to build the
/// table, one to classify, independent of traversal order.
pub fn bradley_threshold(img: &GrayImage, params: &AdaptiveParams) -> BinaryImage {
    let itg = IntegralImage::build(img);
    let (width, height) = (img.width(), img.height());
    let half = params.window() / 2;
    let factor = 100.0 - params.percent();
    let mut labels = Vec::with_capacity(img.pixels().len());
    for y in 0..height {
        let y1 = y.saturating_sub(half);
        let y2 = (y + half).min(height - 1);
        for x in 0..width {
            let x1 = x.saturating_sub(half);
            let x2 = (x + half).min(width - 1);
            let count = u64::from((x2 - x1 + 1) * (y2 - y1 + 1));
            let sum = itg.rect_sum(x1, y1, x2, y2);
            let lhs = (u64::from(img.get(x, y)) * count) as f64;
            let rhs = sum as f64 * factor / 100.0;
            labels.push(u8::from(lhs > rhs));
        }
    }
    BinaryImage::from_labels(width, height, labels).unwrap()
}
