//! Summed-area tables and constant-time window statistics.
//!
//! Every adaptive method in this crate rides on [`IntegralImage`]: one linear
//! pass over the source buys O(1) sums for arbitrary rectangles afterwards.

use crate::raster::GrayImage;

/// Cumulative-sum table over a grayscale image.
///
/// `sums[x, y]` holds the sum of all source pixels at positions `(x', y')`
/// with `x' <= x` and `y' <= y`. The table has the same dimensions as its
/// source. Entries are `u64`, so the total cannot overflow for any image
/// smaller than `2^56 / 255` pixels — far beyond anything addressable here.
#[derive(Debug, Clone)]
pub struct IntegralImage {
    width: u32,
    height: u32,
    sums: Vec<u64>,
}

impl IntegralImage {
    /// Builds the table in a single pass using the recurrence
    /// `I(x, y) = f(x, y) + I(x-1, y) + I(x, y-1) - I(x-1, y-1)`,
    /// where out-of-range terms are zero.
    pub fn build(img: &GrayImage) -> Self {
        let width = img.width() as usize;
        let height = img.height() as usize;
        let mut sums = vec![0u64; width * height];
        for y in 0..height {
            let mut row_sum = 0u64;
            for x in 0..width {
                row_sum += u64::from(img.pixels()[y * width + x]);
                let above = if y > 0 { sums[(y - 1) * width + x] } else { 0 };
                sums[y * width + x] = row_sum + above;
            }
        }
        Self { width: img.width(), height: img.height(), sums }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// Row-major access to the raw table.
    pub fn sums(&self) -> &[u64] {
        &self.sums
    }

    #[inline]
    fn at(&self, x: i64, y: i64) -> u64 {
        if x < 0 || y < 0 {
            return 0;
        }
        self.sums[y as usize * self.width as usize + x as usize]
    }

    /// Sum of source pixels over the inclusive rectangle
    /// `(x1, y1)..=(x2, y2)` in four table lookups.
    ///
    /// Panics if the coordinates are out of order or out of bounds.
    #[inline]
    pub fn rect_sum(&self, x1: u32, y1: u32, x2: u32, y2: u32) -> u64 {
        assert!(
            x1 <= x2 && y1 <= y2 && x2 < self.width && y2 < self.height,
            "invalid rectangle ({x1},{y1})-({x2},{y2}) for {}x{} integral image",
            self.width,
            self.height,
        );
        let (x1, y1, x2, y2) = (i64::from(x1), i64::from(y1), i64::from(x2), i64::from(y2));
        self.at(x2, y2) + self.at(x1 - 1, y1 - 1) - self.at(x2, y1 - 1) - self.at(x1 - 1, y2)
    }

    /// Mean over the square window of odd length `side` centered at
    /// `(cx, cy)`, clamped to the image bounds. The window shrinks at the
    /// borders and the mean divides by the actual in-bounds pixel count,
    /// which is returned alongside. No intermediate rounding.
    ///
    /// Panics if `(cx, cy)` is out of bounds or `side` is even or zero.
    pub fn window_mean(&self, cx: u32, cy: u32, side: u32) -> (f64, u32) {
        assert!(cx < self.width && cy < self.height, "window center out of bounds");
        assert!(side % 2 == 1, "window side must be odd");
        let half = side / 2;
        let x1 = cx.saturating_sub(half);
        let y1 = cy.saturating_sub(half);
        let x2 = (cx + half).min(self.width - 1);
        let y2 = (cy + half).min(self.height - 1);
        let count = (x2 - x1 + 1) * (y2 - y1 + 1);
        let sum = self.rect_sum(x1, y1, x2, y2);
        (sum as f64 / f64::from(count), count)
    }
}
