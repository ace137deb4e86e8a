//! Evaluation of binarization results against ground truth: contour
//! distances, foreground statistics, and confusion counts.

use crate::error::{Error, Result};
use crate::raster::BinaryImage;

/// Distance statistics from ideal contour pixels to the nearest classified
/// edge pixels. Distances are Euclidean; the standard deviation is the
/// population form since the full contour is enumerated, not sampled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourStats {
    pub mean_distance: f64,
    pub std_distance: f64,
    pub max_distance: f64,
    /// Number of ideal contour pixels evaluated.
    pub matched: usize,
}

/// Confusion counts of a classification against ground truth, with label 1
/// as the positive class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Confusion {
    pub true_positive: u64,
    pub true_negative: u64,
    pub false_positive: u64,
    pub false_negative: u64,
}

impl Confusion {
    pub fn total(&self) -> u64 {
        self.true_positive + self.true_negative + self.false_positive + self.false_negative
    }

    pub fn accuracy(&self) -> f64 {
        (self.true_positive + self.true_negative) as f64 / self.total() as f64
    }
}

/// Pixels whose label differs from at least one 4-neighbor, in row-major
/// order. Out-of-bounds neighbors are ignored, and both sides of a
/// transition qualify.
pub fn edge_pixels(bin: &BinaryImage) -> Vec<(u32, u32)> {
    let (width, height) = (bin.width(), bin.height());
    let mut edges = Vec::new();
    for y in 0..height {
        for x in 0..width {
            let here = bin.get(x, y);
            let differs = (x > 0 && bin.get(x - 1, y) != here)
                || (x + 1 < width && bin.get(x + 1, y) != here)
                || (y > 0 && bin.get(x, y - 1) != here)
                || (y + 1 < height && bin.get(x, y + 1) != here);
            if differs {
                edges.push((x, y));
            }
        }
    }
    edges
}

/// Fraction of foreground pixels.
pub fn foreground_ratio(bin: &BinaryImage) -> f64 {
    let ones = bin.labels().iter().filter(|&&l| l == 1).count();
    ones as f64 / bin.labels().len() as f64
}

/// Per-pixel agreement with ground truth: accuracy plus confusion counts.
pub fn pixel_accuracy(classified: &BinaryImage, truth: &BinaryImage) -> Result<(f64, Confusion)> {
    if classified.width() != truth.width() || classified.height() != truth.height() {
        return Err(Error::DimensionMismatch(
            classified.width(),
            classified.height(),
            truth.width(),
            truth.height(),
        ));
    }
    let mut c = Confusion {
        true_positive: 0,
        true_negative: 0,
        false_positive: 0,
        false_negative: 0,
    };
    for (&got, &want) in classified.labels().iter().zip(truth.labels()) {
        match (got, want) {
            (1, 1) => c.true_positive += 1,
            (0, 0) => c.true_negative += 1,
            (1, 0) => c.false_positive += 1,
            _ => c.false_negative += 1,
        }
    }
    Ok((c.accuracy(), c))
}

/// For every ideal contour pixel, the Euclidean distance to the nearest
/// classified edge pixel, aggregated into [`ContourStats`]. The direction is
/// asymmetric: ideal contour pixels query the classified edge set.
///
/// Fails when the images differ in size or when either edge set is empty.
pub fn contour_distance(classified: &BinaryImage, ideal: &BinaryImage) -> Result<ContourStats> {
    if classified.width() != ideal.width() || classified.height() != ideal.height() {
        return Err(Error::DimensionMismatch(
            classified.width(),
            classified.height(),
            ideal.width(),
            ideal.height(),
        ));
    }
    let classified_edges = edge_pixels(classified);
    if classified_edges.is_empty() {
        return Err(Error::NoContour("classified"));
    }
    let ideal_edges = edge_pixels(ideal);
    if ideal_edges.is_empty() {
        return Err(Error::NoContour("ideal"));
    }

    let field = squared_distance_field(
        classified.width() as usize,
        classified.height() as usize,
        &classified_edges,
    );
    let width = classified.width() as usize;
    let distances: Vec<f64> = ideal_edges
        .iter()
        .map(|&(x, y)| field[y as usize * width + x as usize].sqrt())
        .collect();

    let n = distances.len() as f64;
    let mean = distances.iter().sum::<f64>() / n;
    let variance = distances.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / n;
    let max = distances.iter().cloned().fold(0.0, f64::max);
    Ok(ContourStats {
        mean_distance: mean,
        std_distance: variance.sqrt(),
        max_distance: max,
        matched: distances.len(),
    })
}

/// Cost standing in for "no site here"; any true site beats it by ~20
/// orders of magnitude, and it keeps the envelope arithmetic finite.
const FAR: f64 = 1e20;

/// Exact squared Euclidean distance from every grid cell to the nearest
/// site, via the two-pass lower-envelope transform (columns, then rows).
fn squared_distance_field(width: usize, height: usize, sites: &[(u32, u32)]) -> Vec<f64> {
    let mut grid = vec![FAR; width * height];
    for &(x, y) in sites {
        grid[y as usize * width + x as usize] = 0.0;
    }

    let mut scratch = vec![0.0; width.max(height)];
    let mut hull = vec![0usize; width.max(height)];
    let mut breaks = vec![0.0; width.max(height) + 1];

    let mut column = vec![0.0; height];
    for x in 0..width {
        for y in 0..height {
            column[y] = grid[y * width + x];
        }
        envelope_1d(&column, &mut scratch, &mut hull, &mut breaks);
        for y in 0..height {
            grid[y * width + x] = scratch[y];
        }
    }

    let mut row = vec![0.0; width];
    for y in 0..height {
        row.copy_from_slice(&grid[y * width..(y + 1) * width]);
        envelope_1d(&row, &mut scratch, &mut hull, &mut breaks);
        grid[y * width..(y + 1) * width].copy_from_slice(&scratch[..width]);
    }
    grid
}

/// One-dimensional squared distance transform: for each position `q`,
/// `out[q] = min over p of (q - p)^2 + cost[p]`.
fn envelope_1d(cost: &[f64], out: &mut [f64], hull: &mut [usize], breaks: &mut [f64]) {
    let n = cost.len();
    let sq = |i: usize| (i * i) as f64;
    let mut k = 0usize;
    hull[0] = 0;
    breaks[0] = f64::NEG_INFINITY;
    breaks[1] = f64::INFINITY;
    for q in 1..n {
        let mut s;
        loop {
            let p = hull[k];
            s = ((cost[q] + sq(q)) - (cost[p] + sq(p))) / (2.0 * (q as f64 - p as f64));
            if s <= breaks[k] {
                k -= 1;
            } else {
                break;
            }
        }
        k += 1;
        hull[k] = q;
        breaks[k] = s;
        breaks[k + 1] = f64::INFINITY;
    }
    k = 0;
    for q in 0..n {
        while breaks[k + 1] < q as f64 {
            k += 1;
        }
        let p = hull[k];
        out[q] = (q as f64 - p as f64) * (q as f64 - p as f64) + cost[p];
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bin(width: u32, height: u32, labels: &[u8]) -> BinaryImage {
        BinaryImage::from_labels(width, height, labels.to_vec()).unwrap()
    }

    /// All-pairs nearest neighbor, the slow way.
    fn contour_distance_oracle(classified: &BinaryImage, ideal: &BinaryImage) -> Vec<f64> {
        let classified_edges = edge_pixels(classified);
        edge_pixels(ideal)
            .iter()
            .map(|&(ix, iy)| {
                classified_edges
                    .iter()
                    .map(|&(cx, cy)| {
                        let dx = i64::from(cx) - i64::from(ix);
                        let dy = i64::from(cy) - i64::from(iy);
                        (dx * dx + dy * dy) as f64
                    })
                    .fold(f64::INFINITY, f64::min)
                    .sqrt()
            })
            .collect()
    }

    fn stats_from(distances: &[f64]) -> (f64, f64, f64) {
        let n = distances.len() as f64;
        let mean = distances.iter().sum::<f64>() / n;
        let var = distances.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / n;
        let max = distances.iter().cloned().fold(0.0, f64::max);
        (mean, var.sqrt(), max)
    }

    #[test]
    fn constant_image_has_no_edges() {
        assert!(edge_pixels(&BinaryImage::zeros(5, 4).unwrap()).is_empty());
        assert!(edge_pixels(&bin(2, 2, &[1, 1, 1, 1])).is_empty());
    }

    #[test]
    fn isolated_pixel_edges_include_its_neighbors() {
        let mut labels = vec![0u8; 25];
        labels[2 * 5 + 2] = 1;
        let edges = edge_pixels(&bin(5, 5, &labels));
        assert_eq!(edges, vec![(2, 1), (1, 2), (2, 2), (3, 2), (2, 3)]);
    }

    #[test]
    fn half_split_edges_are_the_adjacent_columns() {
        let labels: Vec<u8> = (0..4).flat_map(|_| [0, 0, 0, 1, 1, 1]).collect();
        let edges = edge_pixels(&bin(6, 4, &labels));
        assert_eq!(edges.len(), 8);
        assert!(edges.iter().all(|&(x, _)| x == 2 || x == 3));
    }

    #[test]
    fn identical_images_have_zero_distance() {
        let labels: Vec<u8> = (0..6).flat_map(|_| [0, 0, 0, 1, 1, 1]).collect();
        let img = bin(6, 6, &labels);
        let stats = contour_distance(&img, &img).unwrap();
        assert_eq!(stats.mean_distance, 0.0);
        assert_eq!(stats.std_distance, 0.0);
        assert_eq!(stats.max_distance, 0.0);
        assert_eq!(stats.matched, 12);
    }

    #[test]
    fn shifted_square_stays_within_one_pixel() {
        // A filled 4x4 square and the same square shifted one column right,
        // both well inside the frame.
        let mut ideal = vec![0u8; 100];
        let mut shifted = vec![0u8; 100];
        for y in 3..7 {
            for x in 3..7 {
                ideal[y * 10 + x] = 1;
                shifted[y * 10 + x + 1] = 1;
            }
        }
        let ideal = bin(10, 10, &ideal);
        let shifted = bin(10, 10, &shifted);
        let stats = contour_distance(&shifted, &ideal).unwrap();
        let oracle = contour_distance_oracle(&shifted, &ideal);
        let (mean, std, max) = stats_from(&oracle);
        assert_eq!(stats.mean_distance, mean);
        assert_eq!(stats.std_distance, std);
        assert_eq!(stats.max_distance, max);
        // Every ideal contour pixel is within one pixel of the shifted
        // contour, and the far side really is displaced.
        assert_eq!(stats.max_distance, 1.0);
        assert!(stats.mean_distance > 0.0 && stats.mean_distance <= 1.0);
    }

    #[test]
    fn all_background_classification_is_an_error() {
        let mut labels = vec![0u8; 16];
        labels[5] = 1;
        let ideal = bin(4, 4, &labels);
        let blank = BinaryImage::zeros(4, 4).unwrap();
        assert_eq!(contour_distance(&blank, &ideal), Err(Error::NoContour("classified")));
        assert_eq!(contour_distance(&ideal, &blank), Err(Error::NoContour("ideal")));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = BinaryImage::zeros(4, 4).unwrap();
        let b = BinaryImage::zeros(4, 5).unwrap();
        assert!(matches!(contour_distance(&a, &b), Err(Error::DimensionMismatch(..))));
        assert!(matches!(pixel_accuracy(&a, &b), Err(Error::DimensionMismatch(..))));
    }

    #[test]
    fn foreground_ratio_examples() {
        assert_eq!(foreground_ratio(&BinaryImage::zeros(3, 3).unwrap()), 0.0);
        assert_eq!(foreground_ratio(&bin(2, 2, &[1, 0, 0, 0])), 0.25);
        assert_eq!(foreground_ratio(&bin(2, 2, &[1, 1, 1, 1])), 1.0);
    }

    #[test]
    fn accuracy_examples() {
        let truth = bin(2, 2, &[1, 0, 1, 0]);
        let (acc, c) = pixel_accuracy(&truth, &truth).unwrap();
        assert_eq!(acc, 1.0);
        assert_eq!(c.false_positive, 0);
        assert_eq!(c.false_negative, 0);

        let complement = bin(2, 2, &[0, 1, 0, 1]);
        let (acc, _) = pixel_accuracy(&complement, &truth).unwrap();
        assert_eq!(acc, 0.0);

        let all_fg = bin(2, 2, &[1, 1, 1, 1]);
        let (acc, c) = pixel_accuracy(&all_fg, &truth).unwrap();
        assert_eq!(acc, 0.5);
        assert_eq!(c.false_negative, 0);
        assert_eq!(c.false_positive, 2);
    }

    prop_compose! {
        fn arb_binary()(width in 1u32..32, height in 1u32..32)
            (labels in prop::collection::vec(0u8..=1, (width * height) as usize),
             width in Just(width), height in Just(height))
            -> BinaryImage
        {
            BinaryImage::from_labels(width, height, labels).unwrap()
        }
    }

    prop_compose! {
        fn arb_binary_pair()(width in 1u32..32, height in 1u32..32)
            (a in prop::collection::vec(0u8..=1, (width * height) as usize),
             b in prop::collection::vec(0u8..=1, (width * height) as usize),
             width in Just(width), height in Just(height))
            -> (BinaryImage, BinaryImage)
        {
            (
                BinaryImage::from_labels(width, height, a).unwrap(),
                BinaryImage::from_labels(width, height, b).unwrap(),
            )
        }
    }

    proptest! {
        #[test]
        fn nearest_neighbor_matches_brute_force((a, b) in arb_binary_pair()) {
            prop_assume!(!edge_pixels(&a).is_empty() && !edge_pixels(&b).is_empty());
            let stats = contour_distance(&a, &b).unwrap();
            let oracle = contour_distance_oracle(&a, &b);
            let (mean, std, max) = stats_from(&oracle);
            prop_assert_eq!(stats.mean_distance, mean);
            prop_assert_eq!(stats.std_distance, std);
            prop_assert_eq!(stats.max_distance, max);
            prop_assert_eq!(stats.matched, oracle.len());
        }

        #[test]
        fn self_distance_is_zero(a in arb_binary()) {
            prop_assume!(!edge_pixels(&a).is_empty());
            let stats = contour_distance(&a, &a).unwrap();
            prop_assert_eq!(stats.mean_distance, 0.0);
            prop_assert_eq!(stats.max_distance, 0.0);
        }

        #[test]
        fn accuracy_is_symmetric((a, b) in arb_binary_pair()) {
            let (acc_ab, c_ab) = pixel_accuracy(&a, &b).unwrap();
            let (acc_ba, c_ba) = pixel_accuracy(&b, &a).unwrap();
            prop_assert_eq!(acc_ab, acc_ba);
            prop_assert_eq!(c_ab.false_positive, c_ba.false_negative);
        }
    }
}
