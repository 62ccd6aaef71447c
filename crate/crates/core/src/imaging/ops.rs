use super::{GrayImage, ImagingError};

/// Pixelwise `a - b`, clamped at 0.
pub fn subtract(a: &GrayImage, b: &GrayImage) -> Result<GrayImage, ImagingError> {
    if !a.same_size(b) {
        return Err(ImagingError::DimensionMismatch {
            left: (a.width(), a.height()),
            right: (b.width(), b.height()),
        });
    }
    let pixels = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .map(|(&p, &q)| p.saturating_sub(q))
        .collect();
    GrayImage::from_raw(a.width(), a.height(), pixels)
}

pub fn invert(img: &GrayImage) -> GrayImage {
    img.map(|p| 255 - p)
}

/// Linear min–max stretch to `[0, 255]`, rounding half up. A constant image
/// is returned unchanged.
pub fn autocontrast(img: &GrayImage) -> GrayImage {
    let lo = *img.pixels().iter().min().expect("images are non-empty");
    let hi = *img.pixels().iter().max().expect("images are non-empty");
    if lo == hi {
        return img.clone();
    }
    let range = (hi - lo) as u32;
    let mut lut = [0u8; 256];
    for (p, out) in lut.iter_mut().enumerate().skip(lo as usize).take(range as usize + 1) {
        let num = 255 * (p as u32 - lo as u32);
        *out = ((2 * num + range) / (2 * range)) as u8;
    }
    img.map(|p| lut[p as usize])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subtract_self_is_zero() {
        let img = GrayImage::from_fn(5, 3, |x, y| (x * 50 + y) as u8);
        assert!(subtract(&img, &img).unwrap().pixels().iter().all(|&p| p == 0));
    }

    #[test]
    fn subtract_clamps() {
        let a = GrayImage::from_raw(2, 1, vec![10, 200]).unwrap();
        let b = GrayImage::from_raw(2, 1, vec![30, 50]).unwrap();
        assert_eq!(subtract(&a, &b).unwrap().pixels(), &[0, 150]);
        assert!(subtract(&a, &GrayImage::filled(1, 2, 0)).is_err());
    }

    #[test]
    fn invert_is_involution() {
        let img = GrayImage::from_fn(9, 4, |x, y| (x * 29 + y * 61) as u8);
        assert_eq!(invert(&invert(&img)), img);
        assert_eq!(invert(&GrayImage::filled(1, 1, 0)).pixels(), &[255]);
    }

    #[test]
    fn autocontrast_stretches() {
        let img = GrayImage::from_raw(3, 1, vec![50, 100, 150]).unwrap();
        assert_eq!(autocontrast(&img).pixels(), &[0, 128, 255]);
        let flat = GrayImage::filled(3, 3, 77);
        assert_eq!(autocontrast(&flat), flat);
    }
}
