use serde::{Deserialize, Serialize};

use super::{autocontrast, closing, invert, opening, subtract, GrayImage, ImagingError};

/// Structuring-element sizes `[width, height]` for the text-contrast chain.
///
/// Defaults suit text about 9 px tall; scale them with the expected glyph
/// height.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreprocessParams {
    pub close1: [usize; 2],
    pub open: [usize; 2],
    pub close2: [usize; 2],
}

impl Default for PreprocessParams {
    fn default() -> Self {
        Self {
            close1: [11, 11],
            open: [31, 1],
            close2: [1, 7],
        }
    }
}

impl PreprocessParams {
    /// All elements 1×1; the chain then flattens any input.
    pub fn identity() -> Self {
        Self {
            close1: [1, 1],
            open: [1, 1],
            close2: [1, 1],
        }
    }
}

/// Turns a dark-text-on-light document crop into solid dark text blobs on a
/// bright background:
///
/// 1. black-hat: `closing(img) - img` lights up strokes thinner than `close1`;
/// 2. the inverse is opened with `open`, filling the bright gaps between
///    glyphs of a line;
/// 3. closing with `close2` drops thin dark specks;
/// 4. min–max stretch.
pub fn preprocess_viz(img: &GrayImage, params: &PreprocessParams) -> Result<GrayImage, ImagingError> {
    let [cw, ch] = params.close1;
    let [ow, oh] = params.open;
    let [c2w, c2h] = params.close2;

    let closed = closing(img, cw, ch)?;
    let black_hat = subtract(&closed, img)?;
    let opened = opening(&invert(&black_hat), ow, oh)?;
    let smoothed = closing(&opened, c2w, c2h)?;
    Ok(autocontrast(&smoothed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_input_stays_constant() {
        let img = GrayImage::filled(40, 20, 180);
        let out = preprocess_viz(&img, &PreprocessParams::default()).unwrap();
        let first = out.pixels()[0];
        assert!(out.pixels().iter().all(|&p| p == first));
    }

    #[test]
    fn unit_elements_flatten_to_white() {
        let img = GrayImage::from_fn(13, 7, |x, y| (x * 19 + y * 7) as u8);
        let out = preprocess_viz(&img, &PreprocessParams::identity()).unwrap();
        assert!(out.pixels().iter().all(|&p| p == 255));
    }

    #[test]
    fn glyph_line_comes_out_dark() {
        // one line of 5-px glyphs with 2-px gaps, 9 px tall, on a light page
        let mut img = GrayImage::filled(120, 40, 210);
        let mut inside = vec![false; 120 * 40];
        let mut x = 20;
        while x + 5 <= 100 {
            for y in 15..24 {
                for xx in x..x + 5 {
                    img.set(xx, y, 30);
                }
            }
            x += 7;
        }
        for y in 15..24 {
            for xx in 20..x - 2 {
                inside[y * 120 + xx] = true;
            }
        }
        let out = preprocess_viz(&img, &PreprocessParams::default()).unwrap();
        let (mut s_in, mut n_in, mut s_out, mut n_out) = (0u64, 0u64, 0u64, 0u64);
        for (i, &p) in out.pixels().iter().enumerate() {
            if inside[i] {
                s_in += p as u64;
                n_in += 1;
            } else {
                s_out += p as u64;
                n_out += 1;
            }
        }
        let (mean_in, mean_out) = (s_in as f64 / n_in as f64, s_out as f64 / n_out as f64);
        assert!(mean_in + 100.0 < mean_out, "inside {mean_in}, outside {mean_out}");
    }

    #[test]
    fn params_json_shape() {
        let json = r#"{"close1":[11,11],"open":[31,1],"close2":[1,7]}"#;
        let p: PreprocessParams = serde_json::from_str(json).unwrap();
        assert_eq!(p, PreprocessParams::default());
    }
}
