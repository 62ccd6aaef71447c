//! Flat rectangular erosion and dilation, and the openings/closings built
//! from them.
//!
//! Structuring elements are centred `se_w × se_h` rectangles with odd sides.
//! Borders replicate the edge pixel, which for min/max filters is the same as
//! clipping the window to the image. Both passes are separable and use the
//! van Herk / Gil-Werman block scheme, so cost per pixel does not depend on
//! the element size.

use super::{GrayImage, ImagingError};

#[derive(Clone, Copy)]
enum Extremum {
    Min,
    Max,
}

impl Extremum {
    #[inline]
    fn pick(self, a: u8, b: u8) -> u8 {
        match self {
            Extremum::Min => a.min(b),
            Extremum::Max => a.max(b),
        }
    }
}

fn check_se(se_w: usize, se_h: usize) -> Result<(), ImagingError> {
    if se_w % 2 == 0 || se_h % 2 == 0 {
        return Err(ImagingError::EvenStructuringElement { se_w, se_h });
    }
    Ok(())
}

/// Running extremum over `[j - radius, j + radius] ∩ [0, n)` for each `j`.
struct LineFilter {
    prefix: Vec<u8>,
    suffix: Vec<u8>,
}

impl LineFilter {
    fn new() -> Self {
        Self {
            prefix: Vec::new(),
            suffix: Vec::new(),
        }
    }

    fn apply(&mut self, src: &[u8], radius: usize, op: Extremum, dst: &mut [u8]) {
        let n = src.len();
        if radius == 0 {
            dst.copy_from_slice(src);
            return;
        }
        let span = (2 * radius + 1).min(n);
        self.prefix.clear();
        self.prefix.extend_from_slice(src);
        self.suffix.clear();
        self.suffix.extend_from_slice(src);
        for p in 1..n {
            if p % span != 0 {
                self.prefix[p] = op.pick(self.prefix[p], self.prefix[p - 1]);
            }
        }
        for p in (0..n.saturating_sub(1)).rev() {
            if p % span != span - 1 {
                self.suffix[p] = op.pick(self.suffix[p], self.suffix[p + 1]);
            }
        }
        for (j, out) in dst.iter_mut().enumerate() {
            let a = j.saturating_sub(radius);
            let b = (j + radius).min(n - 1);
            *out = if a / span == b / span {
                if a % span == 0 {
                    self.prefix[b]
                } else {
                    self.suffix[a]
                }
            } else {
                op.pick(self.suffix[a], self.prefix[b])
            };
        }
    }
}

fn separable(img: &GrayImage, se_w: usize, se_h: usize, op: Extremum) -> Result<GrayImage, ImagingError> {
    check_se(se_w, se_h)?;
    let (w, h) = (img.width(), img.height());
    let mut filter = LineFilter::new();

    let mut horizontal = img.clone();
    if se_w > 1 {
        let out = horizontal.pixels_mut();
        for y in 0..h {
            filter.apply(img.row(y), se_w / 2, op, &mut out[y * w..(y + 1) * w]);
        }
    }

    if se_h == 1 {
        return Ok(horizontal);
    }
    let mut result = horizontal.clone();
    let mut column = vec![0u8; h];
    let mut filtered = vec![0u8; h];
    for x in 0..w {
        for (y, c) in column.iter_mut().enumerate() {
            *c = horizontal.get(x, y);
        }
        filter.apply(&column, se_h / 2, op, &mut filtered);
        for (y, &v) in filtered.iter().enumerate() {
            result.set(x, y, v);
        }
    }
    Ok(result)
}

/// Minimum filter over the centred `se_w × se_h` neighbourhood.
pub fn erode(img: &GrayImage, se_w: usize, se_h: usize) -> Result<GrayImage, ImagingError> {
    separable(img, se_w, se_h, Extremum::Min)
}

/// Maximum filter over the centred `se_w × se_h` neighbourhood.
pub fn dilate(img: &GrayImage, se_w: usize, se_h: usize) -> Result<GrayImage, ImagingError> {
    separable(img, se_w, se_h, Extremum::Max)
}

/// Erosion of the dilation. Removes dark features smaller than the element.
pub fn closing(img: &GrayImage, se_w: usize, se_h: usize) -> Result<GrayImage, ImagingError> {
    erode(&dilate(img, se_w, se_h)?, se_w, se_h)
}

/// Dilation of the erosion. Removes bright features smaller than the element.
pub fn opening(img: &GrayImage, se_w: usize, se_h: usize) -> Result<GrayImage, ImagingError> {
    dilate(&erode(img, se_w, se_h)?, se_w, se_h)
}
