//! Netpbm (PNM) codec.
//!
//! Reads P2/P5 graymaps and P3/P6 pixmaps with maxval 255; writes the binary
//! variants P5 and P6. Comment lines (`#` to end of line) are tolerated on
//! read and never emitted on write. Decoding what `encode_*` produced yields
//! the original image exactly.

use thiserror::Error;

use super::{BinaryImage, GrayImage, RgbImage};

/// Result of decoding: either a graymap or a pixmap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PnmImage {
    Gray(GrayImage),
    Rgb(RgbImage),
}

impl PnmImage {
    /// Collapses to grayscale, converting color images with [`super::rgb_to_gray`].
    pub fn into_gray(self) -> GrayImage {
        match self {
            PnmImage::Gray(g) => g,
            PnmImage::Rgb(rgb) => super::rgb_to_gray(&rgb),
        }
    }

    pub fn width(&self) -> u32 {
        match self {
            PnmImage::Gray(g) => g.width(),
            PnmImage::Rgb(c) => c.width(),
        }
    }

    pub fn height(&self) -> u32 {
        match self {
            PnmImage::Gray(g) => g.height(),
            PnmImage::Rgb(c) => c.height(),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PnmError {
    #[error("not a supported PNM magic number (expected P2, P3, P5, or P6)")]
    BadMagic,
    #[error("malformed PNM header: {0}")]
    MalformedHeader(&'static str),
    #[error("unsupported maxval {0} (only 255 is supported)")]
    UnsupportedMaxval(u32),
    #[error("image dimensions must be positive")]
    ZeroDimension,
    #[error("truncated pixel data: expected {expected} samples, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("sample value {0} exceeds maxval 255")]
    SampleOutOfRange(u32),
}

#[derive(Clone, Copy, PartialEq)]
enum Format {
    AsciiGray,
    AsciiRgb,
    BinaryGray,
    BinaryRgb,
}

/// Decodes a PNM byte stream into a gray or RGB image.
pub fn decode(bytes: &[u8]) -> Result<PnmImage, PnmError> {
    let format = match bytes.get(0..2) {
        Some(b"P2") => Format::AsciiGray,
        Some(b"P3") => Format::AsciiRgb,
        Some(b"P5") => Format::BinaryGray,
        Some(b"P6") => Format::BinaryRgb,
        _ => return Err(PnmError::BadMagic),
    };
    let mut lexer = Lexer { bytes, pos: 2 };

    let width = lexer.next_u32("width")?;
    let height = lexer.next_u32("height")?;
    let maxval = lexer.next_u32("maxval")?;
    if width == 0 || height == 0 {
        return Err(PnmError::ZeroDimension);
    }
    if maxval != 255 {
        return Err(PnmError::UnsupportedMaxval(maxval));
    }

    let channels = match format {
        Format::AsciiGray | Format::BinaryGray => 1usize,
        Format::AsciiRgb | Format::BinaryRgb => 3usize,
    };
    let expected = (width as usize) * (height as usize) * channels;

    let samples = match format {
        Format::BinaryGray | Format::BinaryRgb => {
            // Exactly one whitespace byte separates the header from raw data.
            match lexer.bytes.get(lexer.pos) {
                Some(b) if b.is_ascii_whitespace() => lexer.pos += 1,
                _ => return Err(PnmError::MalformedHeader("missing separator before raw data")),
            }
            let data = &lexer.bytes[lexer.pos.min(lexer.bytes.len())..];
            if data.len() < expected {
                return Err(PnmError::Truncated { expected, found: data.len() });
            }
            data[..expected].to_vec()
        }
        Format::AsciiGray | Format::AsciiRgb => {
            let mut samples = Vec::with_capacity(expected);
            while samples.len() < expected {
                match lexer.try_next_u32() {
                    Some(Ok(v)) if v <= 255 => samples.push(v as u8),
                    Some(Ok(v)) => return Err(PnmError::SampleOutOfRange(v)),
                    Some(Err(e)) => return Err(e),
                    None => {
                        return Err(PnmError::Truncated { expected, found: samples.len() })
                    }
                }
            }
            samples
        }
    };

    // The constructors cannot fail here: dimensions and length were checked.
    Ok(match channels {
        1 => PnmImage::Gray(GrayImage::from_pixels(width, height, samples).unwrap()),
        _ => {
            let pixels = samples.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect();
            PnmImage::Rgb(RgbImage::from_pixels(width, height, pixels).unwrap())
        }
    })
}

/// Encodes a grayscale image as binary PGM (P5).
pub fn encode_gray(img: &GrayImage) -> Vec<u8> {
    let mut out = header(b"P5", img.width(), img.height());
    out.extend_from_slice(img.pixels());
    out
}

/// Encodes an RGB image as binary PPM (P6).
pub fn encode_rgb(img: &RgbImage) -> Vec<u8> {
    let mut out = header(b"P6", img.width(), img.height());
    for px in img.pixels() {
        out.extend_from_slice(px);
    }
    out
}

/// Encodes a label map as binary PGM (P5), scaling label 1 to 255.
pub fn encode_binary(img: &BinaryImage) -> Vec<u8> {
    let mut out = header(b"P5", img.width(), img.height());
    out.extend(img.labels().iter().map(|&l| l * 255));
    out
}

fn header(magic: &[u8], width: u32, height: u32) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(magic);
    out.extend_from_slice(format!("\n{width} {height}\n255\n").as_bytes());
    out
}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Lexer<'_> {
    fn skip_whitespace_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while let Some(&b) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if b == b'\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    /// Next ASCII unsigned integer, or None at end of input.
    fn try_next_u32(&mut self) -> Option<Result<u32, PnmError>> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == start {
            if self.pos >= self.bytes.len() {
                return None;
            }
            return Some(Err(PnmError::MalformedHeader("expected an unsigned integer")));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Some(
            text.parse::<u32>()
                .map_err(|_| PnmError::MalformedHeader("integer out of range")),
        )
    }

    fn next_u32(&mut self, _field: &'static str) -> Result<u32, PnmError> {
        self.try_next_u32()
            .unwrap_or(Err(PnmError::MalformedHeader("unexpected end of header")))
    }
}
