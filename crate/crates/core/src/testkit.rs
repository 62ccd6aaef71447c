//! Seeded synthetic inspection zones and plates with ground truth, random
//! placement instances, and box-overlap metrics.
//!
//! Text is drawn as runs of dark rectangles: the first starts on the
//! field's left edge, the last ends on its right edge and all span the full
//! field height, so the ink bounding box is the truth rectangle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dsp::{Cost, CostMatrix, DistanceBounds};
use crate::geometry::Rect;
use crate::imaging::{integral, GrayImage};
use crate::plate::{link_bounds, Axis, PlateError, PlateTemplate, SymbolBoxes};
use crate::viz::{fit_extent, SizeRange, VizError, VizLayout, VizTemplate};

#[derive(Debug, Error)]
pub enum TestkitError {
    #[error(transparent)]
    Viz(#[from] VizError),
    #[error(transparent)]
    Plate(#[from] PlateError),
    #[error("template leaves no room for the requested jitter")]
    Infeasible,
    #[error("glyph value {glyph} must be darker than background {background}")]
    Contrast { glyph: u8, background: u8 },
    #[error("noise sigma must be finite and non-negative, got {0}")]
    InvalidNoise(f64),
    #[error("{pred} predicted boxes for {truth} true ones")]
    CountMismatch { pred: usize, truth: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SynthSpec {
    pub seed: u64,
    pub noise_sigma: f64,
    pub glyph_value: u8,
    pub background_value: u8,
    /// Largest deviation, in pixels, of any truth size (zone) or position
    /// (plate) from its nominal value.
    pub jitter: usize,
}

impl Default for SynthSpec {
    fn default() -> Self {
        Self {
            seed: 0,
            noise_sigma: 0.0,
            glyph_value: 40,
            background_value: 200,
            jitter: 0,
        }
    }
}

impl SynthSpec {
    fn check(&self) -> Result<(), TestkitError> {
        if self.glyph_value >= self.background_value {
            return Err(TestkitError::Contrast {
                glyph: self.glyph_value,
                background: self.background_value,
            });
        }
        if !(self.noise_sigma.is_finite() && self.noise_sigma >= 0.0) {
            return Err(TestkitError::InvalidNoise(self.noise_sigma));
        }
        Ok(())
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// Draws sizes within `ranges`, each at most `jitter` from `nominal`,
/// summing to `extent`. Every value left feasible is equally likely at
/// each step.
fn sample_chain(
    rng: &mut impl Rng,
    ranges: &[SizeRange],
    nominal: &[usize],
    jitter: usize,
    extent: usize,
) -> Option<Vec<usize>> {
    let narrowed: Vec<(usize, usize)> = ranges
        .iter()
        .zip(nominal)
        .map(|(r, &n)| (r.min.max(n.saturating_sub(jitter)), r.max.min(n + jitter)))
        .collect();
    let mut rest_min: usize = narrowed.iter().map(|r| r.0).sum();
    let mut rest_max: usize = narrowed.iter().map(|r| r.1).sum();
    let mut left = extent;
    let mut out = Vec::with_capacity(ranges.len());
    for &(lo, hi) in &narrowed {
        rest_min -= lo;
        rest_max -= hi;
        let lo = lo.max(left.saturating_sub(rest_max));
        let hi = hi.min(left.checked_sub(rest_min)?);
        if lo > hi {
            return None;
        }
        let v = rng.random_range(lo..=hi);
        out.push(v);
        left -= v;
    }
    (left == 0).then_some(out)
}

fn nominal_chain(ranges: &[SizeRange], extent: usize) -> Result<Vec<usize>, TestkitError> {
    fit_extent(ranges, &[], extent).ok_or(TestkitError::Infeasible)
}

fn fill(img: &mut GrayImage, r: Rect, value: u8) {
    let width = img.width();
    for y in r.y..r.bottom() {
        img.pixels_mut()[y * width + r.x..y * width + r.right()].fill(value);
    }
}

/// Adds seeded zero-mean Gaussian noise, rounding and clamping to 0..=255.
pub fn add_gaussian_noise(img: &mut GrayImage, sigma: f64, seed: u64) -> Result<(), TestkitError> {
    if !(sigma.is_finite() && sigma >= 0.0) {
        return Err(TestkitError::InvalidNoise(sigma));
    }
    add_noise(img, sigma, &mut ChaCha8Rng::seed_from_u64(seed));
    Ok(())
}

fn add_noise(img: &mut GrayImage, sigma: f64, rng: &mut impl Rng) {
    if sigma == 0.0 {
        return;
    }
    let normal = Normal::new(0.0, sigma).expect("sigma was checked");
    for p in img.pixels_mut() {
        let v = *p as f64 + normal.sample(rng);
        *p = v.round().clamp(0.0, 255.0) as u8;
    }
}

/// Glyph rectangles covering `field` from edge to edge.
fn glyph_run(field: Rect, rng: &mut impl Rng) -> Vec<Rect> {
    let mut glyphs = Vec::new();
    let mut x = field.x;
    while field.right() - x > 9 {
        let w = rng.random_range(3..=6);
        glyphs.push(Rect::new(x, field.y, w, field.h));
        x += w + rng.random_range(1..=3);
    }
    glyphs.push(Rect::from_edges(x, field.y, field.right(), field.bottom()));
    glyphs
}

/// Renders a `width`x`height` inspection zone for `tpl`. The truth layout
/// has every row height and block width within `jitter` of the nominal
/// sizes, which split the extent in proportion to the template ranges.
pub fn gen_viz(
    tpl: &VizTemplate,
    width: usize,
    height: usize,
    spec: &SynthSpec,
) -> Result<(GrayImage, VizLayout), TestkitError> {
    spec.check()?;
    tpl.validate(width, height)?;
    let mut rng = spec.rng();

    let row_ranges: Vec<SizeRange> = tpl.rows.iter().map(|r| r.h).collect();
    let nominal = nominal_chain(&row_ranges, height)?;
    let heights =
        sample_chain(&mut rng, &row_ranges, &nominal, spec.jitter, height).ok_or(TestkitError::Infeasible)?;

    let mut widths = Vec::with_capacity(tpl.rows.len());
    for row in &tpl.rows {
        if !row.is_text() {
            widths.push(Vec::new());
            continue;
        }
        let ranges: Vec<SizeRange> = row.blocks.iter().map(|b| b.w).collect();
        let nominal = nominal_chain(&ranges, width)?;
        let w = sample_chain(&mut rng, &ranges, &nominal, spec.jitter, width).ok_or(TestkitError::Infeasible)?;
        widths.push(w);
    }

    let truth = VizLayout::from_sizes(tpl, width, height, &heights, &widths);
    let mut img = GrayImage::filled(width, height, spec.background_value);
    for f in &truth.fields {
        for g in glyph_run(f.rect, &mut rng) {
            fill(&mut img, g, spec.glyph_value);
        }
    }
    add_noise(&mut img, spec.noise_sigma, &mut rng);
    Ok((img, truth))
}

/// Renders a plate for `tpl` at its nominal extent. Truth boxes keep the
/// nominal sizes, satisfy the link bounds on both axes and lie within
/// `jitter` of the nominal positions; their objective is measured on the
/// rendered image. Each symbol is a filled rectangle
/// inset 1 px in its box, drawn light on dark if the template inverts.
pub fn gen_plate(tpl: &PlateTemplate, spec: &SynthSpec) -> Result<(GrayImage, SymbolBoxes), TestkitError> {
    spec.check()?;
    tpl.validate()?;
    let mut rng = spec.rng();
    let xs = sample_axis(&mut rng, tpl, Axis::X, spec.jitter)?;
    let ys = sample_axis(&mut rng, tpl, Axis::Y, spec.jitter)?;
    let boxes: Vec<Rect> = tpl
        .symbols
        .iter()
        .zip(xs.iter().zip(&ys))
        .map(|(s, (&x, &y))| Rect::new(x, y, s.w, s.h))
        .collect();

    let (ink, ground) = if tpl.invert_input {
        (255 - spec.glyph_value, 255 - spec.background_value)
    } else {
        (spec.glyph_value, spec.background_value)
    };
    let mut img = GrayImage::filled(tpl.width, tpl.height, ground);
    for b in &boxes {
        if b.w > 2 && b.h > 2 {
            fill(&mut img, Rect::new(b.x + 1, b.y + 1, b.w - 2, b.h - 2), ink);
        }
    }
    add_noise(&mut img, spec.noise_sigma, &mut rng);
    let ii = integral(&img);
    let objective = boxes.iter().map(|b| ii.rect_sum(b)).sum();
    Ok((img, SymbolBoxes { boxes, objective }))
}

fn sample_axis(rng: &mut impl Rng, tpl: &PlateTemplate, axis: Axis, jitter: usize) -> Result<Vec<usize>, TestkitError> {
    let bounds = link_bounds(tpl, axis);
    let (extent, pos, size): (i64, fn(&Rect) -> usize, fn(&Rect) -> usize) = match axis {
        Axis::X => (tpl.width as i64, |r| r.x, |r| r.w),
        Axis::Y => (tpl.height as i64, |r| r.y, |r| r.h),
    };
    let j = jitter as i64;
    let mut out: Vec<usize> = Vec::with_capacity(tpl.symbols.len());
    for (i, s) in tpl.symbols.iter().enumerate() {
        let nom = pos(s) as i64;
        let (mut lo, mut hi) = ((nom - j).max(0), (nom + j).min(extent - size(s) as i64));
        if let Some(&prev) = out.last() {
            let (t_min, t_max) = bounds.link(i - 1);
            lo = lo.max(prev as i64 + t_min);
            hi = hi.min(prev as i64 + t_max);
        }
        if lo > hi {
            return Err(TestkitError::Infeasible);
        }
        out.push(rng.random_range(lo..=hi) as usize);
    }
    Ok(out)
}

/// Mean intersection over union of corresponding rectangles.
pub fn mean_iou(pred: &[Rect], truth: &[Rect]) -> Result<f64, TestkitError> {
    if pred.len() != truth.len() {
        return Err(TestkitError::CountMismatch {
            pred: pred.len(),
            truth: truth.len(),
        });
    }
    if pred.is_empty() {
        return Ok(1.0);
    }
    let total: f64 = pred.iter().zip(truth).map(|(a, b)| a.iou(b)).sum();
    Ok(total / pred.len() as f64)
}

/// Random instance with costs in `0..100`, each infinite with
/// probability `inf_prob`, and link bounds of mixed sign.
pub fn random_dsp_instance(
    rng: &mut impl Rng,
    parts: usize,
    positions: usize,
    inf_prob: f64,
) -> (CostMatrix<u64>, DistanceBounds) {
    let data = (0..parts * positions)
        .map(|_| {
            if rng.random_bool(inf_prob) {
                u64::INFINITY
            } else {
                rng.random_range(0..100)
            }
        })
        .collect();
    let reach = positions as i64;
    let (t_min, t_max) = (1..parts)
        .map(|_| {
            let lo = rng.random_range(-reach / 2..=reach / 2);
            (lo, lo + rng.random_range(0..=reach / 2))
        })
        .unzip();
    (
        CostMatrix::new(parts, positions, data).expect("shape is consistent"),
        DistanceBounds::new(t_min, t_max).expect("bounds are ordered"),
    )
}

/// Instance whose every link admits `window` consecutive offsets starting
/// at 0, with uniform costs below one million.
pub fn banded_instance(seed: u64, parts: usize, positions: usize, window: usize) -> (CostMatrix<u64>, DistanceBounds) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..parts * positions).map(|_| rng.random_range(0..1_000_000)).collect();
    let bounds = DistanceBounds::uniform(parts.saturating_sub(1), 0, window as i64 - 1).expect("window is positive");
    (CostMatrix::new(parts, positions, data).expect("shape is consistent"), bounds)
}
