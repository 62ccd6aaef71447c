use super::{GrayImage, ImagingError};
use crate::geometry::Rect;

/// Summed-area table: `sums[y][x]` is the sum of the source over
/// `[0, x) × [0, y)`, so any rectangle sum costs four lookups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralImage {
    width: usize,
    height: usize,
    sums: Vec<u64>,
}

impl IntegralImage {
    pub fn new(img: &GrayImage) -> Self {
        let (w, h) = (img.width(), img.height());
        let stride = w + 1;
        let mut sums = vec![0u64; stride * (h + 1)];
        for y in 0..h {
            let mut run = 0u64;
            for (x, &p) in img.row(y).iter().enumerate() {
                run += p as u64;
                sums[(y + 1) * stride + x + 1] = sums[y * stride + x + 1] + run;
            }
        }
        Self {
            width: w,
            height: h,
            sums,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Table entry at `(x, y)`, `0 <= x <= width`, `0 <= y <= height`.
    #[inline]
    pub fn at(&self, x: usize, y: usize) -> u64 {
        self.sums[y * (self.width + 1) + x]
    }

    pub fn total(&self) -> u64 {
        self.at(self.width, self.height)
    }

    /// Sum over `[x, x + w) × [y, y + h)`. Panics when out of bounds; see
    /// [`IntegralImage::window_sum`] for the checked form.
    #[inline]
    pub fn sum(&self, x: usize, y: usize, w: usize, h: usize) -> u64 {
        debug_assert!(x + w <= self.width && y + h <= self.height);
        let (x1, y1) = (x + w, y + h);
        self.at(x1, y1) + self.at(x, y) - self.at(x1, y) - self.at(x, y1)
    }

    pub fn window_sum(&self, x: usize, y: usize, w: usize, h: usize) -> Result<u64, ImagingError> {
        let fits_x = x.checked_add(w).is_some_and(|r| r <= self.width);
        let fits_y = y.checked_add(h).is_some_and(|b| b <= self.height);
        if !(fits_x && fits_y) {
            return Err(ImagingError::OutOfBounds {
                x,
                y,
                w,
                h,
                width: self.width,
                height: self.height,
            });
        }
        Ok(self.sum(x, y, w, h))
    }

    #[inline]
    pub fn rect_sum(&self, r: &Rect) -> u64 {
        self.sum(r.x, r.y, r.w, r.h)
    }
}

pub fn integral(img: &GrayImage) -> IntegralImage {
    IntegralImage::new(img)
}
