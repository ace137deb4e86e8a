//! Image containers, grayscale conversion, and synthetic test scenes.
//!
//! All images are row-major with the origin at the top-left corner;
//! `x` indexes columns and `y` indexes rows.

pub mod pnm;

use crate::error::{Error, Result};

/// 8-bit grayscale image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: u32,
    height: u32,
    pixels: Vec<u8>,
}

impl GrayImage {
    /// Builds an image from row-major pixel data.
    ///
    /// `pixels.len()` must equal `width * height` and both dimensions must
    /// be positive.
    pub fn from_pixels(width: u32, height: u32, pixels: Vec<u8>) -> Result<Self> {
        check_dims(width, height, pixels.len())?;
        Ok(Self { width, height, pixels })
    }

    /// Constant-valued image.
    pub fn filled(width: u32, height: u32, value: u8) -> Result<Self> {
        Self::from_pixels(width, height, vec![value; (width as usize) * (height as usize)])
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    /// Pixel value at `(x, y)`. Panics if out of bounds.
    #[inline]
    pub fn get(&self, x: u32, y: u32) -> u8 {
        debug_assert!(x < self.width && y < self.height);
        self.pixels[y as usize * self.width as usize + x as usize]
    }
}

/// 8-bit-per-channel RGB image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgbImage {
    width: u32,
    height: u32,
    pixels: Vec<[u8; 3]>,
}

impl RgbImage {
    pub fn from_pixels(width: u32, height: u32, pixels: Vec<[u8; 3]>) -> Result<Self> {
        check_dims(width, height, pixels.len())?;
        Ok(Self { width, height, pixels })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixels(&self) -> &[[u8; 3]] {
        &self.pixels
    }

    #[inline]
    pub fn get(&self, x: u32, y: u32) -> [u8; 3] {
        debug_assert!(x < self.width && y < self.height);
        self.pixels[y as usize * self.width as usize + x as usize]
    }
}

/// Two-level label map: 0 = background, 1 = foreground.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryImage {
    width: u32,
    height: u32,
    labels: Vec<u8>,
}

impl BinaryImage {
    /// Builds a label map from row-major labels, each of which must be 0 or 1.
    pub fn from_labels(width: u32, height: u32, labels: Vec<u8>) -> Result<Self> {
        check_dims(width, height, labels.len())?;
        if labels.iter().any(|&l| l > 1) {
            return Err(Error::InvalidParam("binary labels must be 0 or 1".into()));
        }
        Ok(Self { width, height, labels })
    }

    /// All-background image.
    pub fn zeros(width: u32, height: u32) -> Result<Self> {
        check_dims(width, height, (width as usize) * (height as usize))?;
        Ok(Self { width, height, labels: vec![0; (width as usize) * (height as usize)] })
    }

    /// Reinterprets a grayscale image as labels: any nonzero pixel is
    /// foreground. This is the inverse of the 1 -> 255 scaling used when
    /// a binary image is written to disk.
    pub fn from_gray_nonzero(img: &GrayImage) -> Self {
        let labels = img.pixels().iter().map(|&p| u8::from(p != 0)).collect();
        Self { width: img.width(), height: img.height(), labels }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    #[inline]
    pub fn get(&self, x: u32, y: u32) -> u8 {
        debug_assert!(x < self.width && y < self.height);
        self.labels[y as usize * self.width as usize + x as usize]
    }
}

fn check_dims(width: u32, height: u32, len: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidParam("image dimensions must be positive".into()));
    }
    let expected = (width as usize)
        .checked_mul(height as usize)
        .ok_or_else(|| Error::InvalidParam("image dimensions overflow".into()))?;
    if len != expected {
        return Err(Error::InvalidParam(format!(
            "pixel buffer length {len} does not match {width}x{height}"
        )));
    }
    Ok(())
}

/// Converts color to grayscale with BT.601 luma weights:
/// `round(0.299 R + 0.587 G + 0.114 B)`.
pub fn rgb_to_gray(img: &RgbImage) -> GrayImage {
    let pixels = img
        .pixels()
        .iter()
        .map(|&[r, g, b]| {
            let luma = 0.299 * f64::from(r) + 0.587 * f64::from(g) + 0.114 * f64::from(b);
            luma.round().clamp(0.0, 255.0) as u8
        })
        .collect();
    GrayImage { width: img.width(), height: img.height(), pixels }
}

/// Synthesizes a checkerboard scene under a horizontal illumination ramp,
/// together with its ground-truth mask.
///
/// Cells alternate between `lo` and `hi` intensity (the top-left cell is
/// `lo`). An additive left-to-right ramp of total magnitude `gradient_span`
/// is applied to the scene, clamped to `[0, 255]`; the per-column offset is
/// `floor(gradient_span * x / (width - 1))`. The mask marks `hi` cells as
/// foreground and is unaffected by the ramp.
pub fn gradient_checkerboard(
    width: u32,
    height: u32,
    cell_size: u32,
    lo: u8,
    hi: u8,
    gradient_span: u32,
) -> Result<(GrayImage, BinaryImage)> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidParam("scene dimensions must be positive".into()));
    }
    if cell_size == 0 {
        return Err(Error::InvalidParam("cell size must be positive".into()));
    }
    if cell_size > width || cell_size > height {
        return Err(Error::InvalidParam(format!(
            "cell size {cell_size} exceeds scene dimensions {width}x{height}"
        )));
    }
    if lo >= hi {
        return Err(Error::InvalidParam(format!("lo {lo} must be below hi {hi}")));
    }

    let n = (width as usize) * (height as usize);
    let mut pixels = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for y in 0..height {
        for x in 0..width {
            let is_hi = ((x / cell_size) + (y / cell_size)) % 2 == 1;
            let base = if is_hi { hi } else { lo };
            let offset = if width > 1 {
                (u64::from(gradient_span) * u64::from(x)) / u64::from(width - 1)
            } else {
                0
            };
            pixels.push((u64::from(base) + offset).min(255) as u8);
            labels.push(u8::from(is_hi));
        }
    }
    Ok((
        GrayImage { width, height, pixels },
        BinaryImage { width, height, labels },
    ))
}
