//! Binary PGM (`P5`, maxval 255) reading and writing.

use std::fs;
use std::path::Path;

use super::{GrayImage, ImagingError};

/// Parses a binary PGM. Comments (`#` to end of line) are allowed between
/// header tokens. Bytes after the raster are ignored.
pub fn load_pgm(bytes: &[u8]) -> Result<GrayImage, ImagingError> {
    let mut header = Header { bytes, pos: 0 };
    if header.bytes.get(..2) != Some(b"P5") {
        return Err(ImagingError::MalformedHeader("missing P5 magic".into()));
    }
    header.pos = 2;
    let width = header.number("width")?;
    let height = header.number("height")?;
    let maxval = header.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(ImagingError::MalformedHeader(format!(
            "zero dimension {width}x{height}"
        )));
    }
    if maxval != 255 {
        return Err(ImagingError::UnsupportedMaxval(maxval));
    }
    // exactly one whitespace byte separates the header from the raster
    match header.bytes.get(header.pos) {
        Some(b) if b.is_ascii_whitespace() => header.pos += 1,
        _ => {
            return Err(ImagingError::MalformedHeader(
                "no whitespace after maxval".into(),
            ))
        }
    }
    let needed = width
        .checked_mul(height)
        .ok_or_else(|| ImagingError::MalformedHeader("dimensions overflow".into()))?;
    let data = &bytes[header.pos..];
    if data.len() < needed {
        return Err(ImagingError::TruncatedData {
            expected: needed,
            got: data.len(),
        });
    }
    GrayImage::from_raw(width, height, data[..needed].to_vec())
}

pub fn save_pgm(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend_from_slice(img.pixels());
    out
}

pub fn read_pgm_file(path: impl AsRef<Path>) -> Result<GrayImage, ImagingError> {
    load_pgm(&fs::read(path)?)
}

pub fn write_pgm_file(path: impl AsRef<Path>, img: &GrayImage) -> Result<(), ImagingError> {
    fs::write(path, save_pgm(img))?;
    Ok(())
}

struct Header<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Header<'_> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<usize, ImagingError> {
        let before = self.pos;
        self.skip_space_and_comments();
        if self.pos == before {
            return Err(ImagingError::MalformedHeader(format!(
                "expected whitespace before {what}"
            )));
        }
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| ImagingError::MalformedHeader(format!("invalid {what}")))
    }
}
