//! Non-contextual thresholding: fixed, band, iterative two-class refinement,
//! and color-space methods. Every pixel is judged against image-wide values,
//! never against its neighborhood.

use crate::error::{Error, Result};
use crate::raster::{BinaryImage, GrayImage, RgbImage};

/// Inclusive intensity interval `[t1, t2]` defining the foreground band.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BandThreshold {
    t1: u8,
    t2: u8,
}

impl BandThreshold {
    pub fn new(t1: u8, t2: u8) -> Result<Self> {
        if t1 > t2 {
            return Err(Error::InvalidParam(format!("band bounds out of order: {t1} > {t2}")));
        }
        Ok(Self { t1, t2 })
    }

    pub fn bounds(&self) -> (u8, u8) {
        (self.t1, self.t2)
    }
}

/// Sphere in RGB space around a reference color; pixels inside or on the
/// sphere are foreground.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColorSphere {
    pub reference: [u8; 3],
    pub radius: f64,
}

impl ColorSphere {
    pub fn new(reference: [u8; 3], radius: f64) -> Result<Self> {
        if !(radius >= 0.0) {
            return Err(Error::InvalidParam(format!("sphere radius must be >= 0, got {radius}")));
        }
        Ok(Self { reference, radius })
    }
}

/// Labels each pixel 1 where `pixel >= t`, 0 where `pixel < t`.
///
/// `t` may lie outside `[0, 255]`: `t <= 0` marks everything foreground and
/// `t > 255` everything background.
pub fn threshold_fixed(img: &GrayImage, t: i32) -> BinaryImage {
    let labels = img.pixels().iter().map(|&p| u8::from(i32::from(p) >= t)).collect();
    BinaryImage::from_labels(img.width(), img.height(), labels).unwrap()
}

/// Labels each pixel 1 iff it lies inside the band (inclusive on both ends).
pub fn threshold_band(img: &GrayImage, band: BandThreshold) -> BinaryImage {
    let (t1, t2) = band.bounds();
    let labels = img.pixels().iter().map(|&p| u8::from(t1 <= p && p <= t2)).collect();
    BinaryImage::from_labels(img.width(), img.height(), labels).unwrap()
}

/// Exact arithmetic mean of all pixel intensities.
pub fn global_mean(img: &GrayImage) -> f64 {
    let sum: u64 = img.pixels().iter().map(|&p| u64::from(p)).sum();
    sum as f64 / img.pixels().len() as f64
}

/// Refines a two-class threshold by alternating between the class means.
///
/// Starting from the global mean, each step replaces the threshold with the
/// midpoint of the mean below and the mean at-or-above it:
/// `T' = (mean(pixels < T) + mean(pixels >= T)) / 2`. Iteration stops when
/// the threshold moves less than `epsilon`, when either class becomes empty
/// (the current threshold is returned immediately), or after 256 steps.
pub fn iterative_peak_threshold(img: &GrayImage, epsilon: f64) -> Result<f64> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidParam(format!("epsilon must be > 0, got {epsilon}")));
    }
    let mut histogram = [0u64; 256];
    for &p in img.pixels() {
        histogram[p as usize] += 1;
    }

    let mut t = global_mean(img);
    for _ in 0..256 {
        let mut low = (0u64, 0u64); // (count, weighted sum) of pixels < t
        let mut high = (0u64, 0u64);
        for (value, &count) in histogram.iter().enumerate() {
            let side = if (value as f64) < t { &mut low } else { &mut high };
            side.0 += count;
            side.1 += value as u64 * count;
        }
        if low.0 == 0 || high.0 == 0 {
            return Ok(t);
        }
        let next = (low.1 as f64 / low.0 as f64 + high.1 as f64 / high.0 as f64) / 2.0;
        let done = (next - t).abs() < epsilon;
        t = next;
        if done {
            break;
        }
    }
    Ok(t)
}

/// Labels each pixel 1 iff its Euclidean distance to the sphere's reference
/// color is at most the radius. Compares squared distances, so the decision
/// is exact.
pub fn color_sphere_threshold(img: &RgbImage, sphere: &ColorSphere) -> BinaryImage {
    let [r0, g0, b0] = sphere.reference;
    let radius_sq = sphere.radius * sphere.radius;
    let labels = img
        .pixels()
        .iter()
        .map(|&[r, g, b]| {
            let dr = i32::from(r) - i32::from(r0);
            let dg = i32::from(g) - i32::from(g0);
            let db = i32::from(b) - i32::from(b0);
            let dist_sq = dr * dr + dg * dg + db * db;
            u8::from(f64::from(dist_sq) <= radius_sq)
        })
        .collect();
    BinaryImage::from_labels(img.width(), img.height(), labels).unwrap()
}

/// Occupancy counts over a uniform partition of RGB space.
#[derive(Debug, Clone)]
pub struct ColorHistogram {
    bins_per_channel: u32,
    counts: Vec<u64>,
}

impl ColorHistogram {
    pub fn bins_per_channel(&self) -> u32 {
        self.bins_per_channel
    }

    /// Count in bin `(r_bin, g_bin, b_bin)`.
    pub fn count(&self, r_bin: u32, g_bin: u32, b_bin: u32) -> u64 {
        let b = self.bins_per_channel as usize;
        self.counts[(r_bin as usize * b + g_bin as usize) * b + b_bin as usize]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Iterates `(r_bin, g_bin, b_bin, count)` in lexicographic bin order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, u32, u64)> + '_ {
        let b = self.bins_per_channel;
        self.counts.iter().enumerate().map(move |(i, &count)| {
            let i = i as u32;
            (i / (b * b), (i / b) % b, i % b, count)
        })
    }
}

/// Bins every pixel into `(floor(R/w), floor(G/w), floor(B/w))` where
/// `w = 256 / bins_per_channel`. `bins_per_channel` must divide 256.
pub fn color_histogram(img: &RgbImage, bins_per_channel: u32) -> Result<ColorHistogram> {
    if bins_per_channel == 0 || 256 % bins_per_channel != 0 {
        return Err(Error::InvalidParam(format!(
            "bins per channel must divide 256, got {bins_per_channel}"
        )));
    }
    let bin_width = 256 / bins_per_channel;
    let b = bins_per_channel as usize;
    let mut counts = vec![0u64; b * b * b];
    for &[r, g, b_ch] in img.pixels() {
        let (rb, gb, bb) = (
            u32::from(r) / bin_width,
            u32::from(g) / bin_width,
            u32::from(b_ch) / bin_width,
        );
        counts[(rb as usize * b + gb as usize) * b + bb as usize] += 1;
    }
    Ok(ColorHistogram { bins_per_channel, counts })
}
