//! License-plate symbol localisation.
//!
//! A [`PlateTemplate`] gives the nominal rectangle of every symbol. Sizes
//! stay fixed; positions move to minimise the total brightness inside the
//! boxes. With all y fixed the x coordinates form a placement problem whose
//! links bound the offset between neighbours, and likewise for y, so the
//! two axes are optimised alternately.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dsp::{self, Cost, CostMatrix, DistanceBounds};
use crate::geometry::Rect;
use crate::imaging::{autocontrast, integral, invert, GrayImage, ImagingError, IntegralImage};

pub const DEFAULT_MAX_ITERS: usize = 5;

#[derive(Debug, Error)]
pub enum PlateError {
    #[error("plate template has no symbols")]
    NoSymbols,
    #[error("elasticity must be positive and finite, got {0}")]
    InvalidDelta(f64),
    #[error("symbol {index} has an empty rectangle")]
    EmptySymbol { index: usize },
    #[error("symbol {index} lies outside the {width}x{height} plate extent")]
    OutsideExtent {
        index: usize,
        width: usize,
        height: usize,
    },
    #[error("symbol {index} does not fit in a {width}x{height} image")]
    SymbolTooLarge {
        index: usize,
        width: usize,
        height: usize,
    },
    #[error("no placement along {0:?} satisfies the template")]
    Infeasible(Axis),
    #[error(transparent)]
    Imaging(#[from] ImagingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
}

/// How the elasticity bounds the offset between adjacent symbols.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LinkModel {
    /// The offset may deviate from its nominal value by `δ·D`.
    #[default]
    Deviation,
    /// The offset itself is bounded by `±δ·D`.
    Literal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlateTemplate {
    /// Nominal plate extent the symbol rectangles are given in.
    pub width: usize,
    pub height: usize,
    pub symbols: Vec<Rect>,
    pub delta: f64,
    #[serde(default)]
    pub invert_input: bool,
    #[serde(default)]
    pub link_model: LinkModel,
}

impl PlateTemplate {
    pub fn new(width: usize, height: usize, symbols: Vec<Rect>, delta: f64) -> Self {
        Self {
            width,
            height,
            symbols,
            delta,
            invert_input: false,
            link_model: LinkModel::Deviation,
        }
    }

    pub fn validate(&self) -> Result<(), PlateError> {
        if self.symbols.is_empty() {
            return Err(PlateError::NoSymbols);
        }
        if !(self.delta.is_finite() && self.delta > 0.0) {
            return Err(PlateError::InvalidDelta(self.delta));
        }
        for (index, s) in self.symbols.iter().enumerate() {
            if s.is_empty() {
                return Err(PlateError::EmptySymbol { index });
            }
            if !s.fits_in(self.width, self.height) {
                return Err(PlateError::OutsideExtent {
                    index,
                    width: self.width,
                    height: self.height,
                });
            }
        }
        Ok(())
    }

    /// Largest admissible deviation of link `i`: `floor(δ·D)` where `D` is
    /// the distance between the nominal symbol centres.
    pub fn slack(&self, i: usize) -> i64 {
        let (a, b) = (self.symbols[i], self.symbols[i + 1]);
        let centre = |r: Rect| (r.x as f64 + r.w as f64 / 2.0, r.y as f64 + r.h as f64 / 2.0);
        let ((ax, ay), (bx, by)) = (centre(a), centre(b));
        let d = (bx - ax).hypot(by - ay);
        // the epsilon keeps products such as 0.29 * 100 from flooring one short
        (self.delta * d + 1e-9).floor() as i64
    }
}

fn coord(r: &Rect, axis: Axis) -> usize {
    match axis {
        Axis::X => r.x,
        Axis::Y => r.y,
    }
}

/// Interval constraints on `coord(i+1) - coord(i)` along `axis`.
pub fn link_bounds(tpl: &PlateTemplate, axis: Axis) -> DistanceBounds {
    let links = tpl.symbols.len().saturating_sub(1);
    let (t_min, t_max) = (0..links)
        .map(|i| {
            let slack = tpl.slack(i);
            let nominal = match tpl.link_model {
                LinkModel::Deviation => {
                    coord(&tpl.symbols[i + 1], axis) as i64 - coord(&tpl.symbols[i], axis) as i64
                }
                LinkModel::Literal => 0,
            };
            (nominal - slack, nominal + slack)
        })
        .unzip();
    DistanceBounds::new(t_min, t_max).expect("slack is never negative")
}

/// Brightness of every box at every position along `axis`, the other
/// coordinate taken from `boxes`. Positions where a box would leave the
/// image cost infinity.
pub fn axis_costs(ii: &IntegralImage, boxes: &[Rect], axis: Axis) -> CostMatrix<u64> {
    let extent = match axis {
        Axis::X => ii.width(),
        Axis::Y => ii.height(),
    };
    let mut data = vec![u64::INFINITY; boxes.len() * extent];
    for (b, row) in boxes.iter().zip(data.chunks_mut(extent)) {
        let size = match axis {
            Axis::X => b.w,
            Axis::Y => b.h,
        };
        for (p, c) in row.iter_mut().enumerate().take((extent + 1).saturating_sub(size)) {
            *c = match axis {
                Axis::X => ii.sum(p, b.y, b.w, b.h),
                Axis::Y => ii.sum(b.x, p, b.w, b.h),
            };
        }
    }
    CostMatrix::new(boxes.len(), extent, data).expect("shape is consistent")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolBoxes {
    pub boxes: Vec<Rect>,
    /// Total brightness inside the boxes on the prepared image.
    pub objective: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlateOutcome {
    pub result: SymbolBoxes,
    pub iterations: usize,
    /// True when the last iteration moved nothing.
    pub converged: bool,
    /// Objective at the initial boxes, then after every axis pass.
    pub trace: Vec<u64>,
}

/// Inversion if the template asks for it, then autocontrast.
pub fn prepare_plate(img: &GrayImage, tpl: &PlateTemplate) -> GrayImage {
    if tpl.invert_input {
        autocontrast(&invert(img))
    } else {
        autocontrast(img)
    }
}

/// Nominal boxes shifted into a `width`x`height` image.
pub fn clamp_boxes(tpl: &PlateTemplate, width: usize, height: usize) -> Result<Vec<Rect>, PlateError> {
    tpl.symbols
        .iter()
        .enumerate()
        .map(|(index, s)| {
            if s.w > width || s.h > height {
                return Err(PlateError::SymbolTooLarge { index, width, height });
            }
            Ok(Rect::new(s.x.min(width - s.w), s.y.min(height - s.h), s.w, s.h))
        })
        .collect()
}

fn total(ii: &IntegralImage, boxes: &[Rect]) -> u64 {
    boxes.iter().map(|b| ii.rect_sum(b)).sum()
}

/// One exact pass along `axis` with the other coordinate held. The boxes
/// move only if the pass strictly lowers their total brightness, or if
/// they broke the links before it. Returns the objective afterwards and
/// whether anything moved.
pub fn axis_pass(
    ii: &IntegralImage,
    boxes: &mut [Rect],
    bounds: &DistanceBounds,
    axis: Axis,
) -> Result<(u64, bool), PlateError> {
    let current = total(ii, boxes);
    let costs = axis_costs(ii, boxes, axis);
    let sol = dsp::solve(&costs, bounds).expect("plate problems are well formed");
    if !sol.is_feasible() {
        return Err(PlateError::Infeasible(axis));
    }
    let now: Vec<usize> = boxes.iter().map(|b| coord(b, axis)).collect();
    if sol.locations == now || (sol.objective >= current && bounds.admits(&now)) {
        return Ok((current, false));
    }
    for (b, &p) in boxes.iter_mut().zip(&sol.locations) {
        match axis {
            Axis::X => b.x = p,
            Axis::Y => b.y = p,
        }
    }
    Ok((sol.objective, true))
}

/// Alternates x and y passes from the nominal boxes until an iteration
/// moves nothing or `max_iters` iterations have run.
pub fn segment_plate(img: &GrayImage, tpl: &PlateTemplate, max_iters: usize) -> Result<PlateOutcome, PlateError> {
    tpl.validate()?;
    let ii = integral(&prepare_plate(img, tpl));
    let mut boxes = clamp_boxes(tpl, img.width(), img.height())?;
    let bx = link_bounds(tpl, Axis::X);
    let by = link_bounds(tpl, Axis::Y);

    let mut objective = total(&ii, &boxes);
    let mut trace = vec![objective];
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iters {
        iterations += 1;
        let (after_x, moved_x) = axis_pass(&ii, &mut boxes, &bx, Axis::X)?;
        trace.push(after_x);
        let (after_y, moved_y) = axis_pass(&ii, &mut boxes, &by, Axis::Y)?;
        trace.push(after_y);
        objective = after_y;
        if !moved_x && !moved_y {
            converged = true;
            break;
        }
    }
    Ok(PlateOutcome {
        result: SymbolBoxes { boxes, objective },
        iterations,
        converged,
        trace,
    })
}
