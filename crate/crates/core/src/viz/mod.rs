//! Text-field extraction from a document's visual inspection zone.
//!
//! The zone is described by a [`VizTemplate`]: rows stacked top to bottom,
//! alternating gap and text, and in each text row blocks alternating gap
//! and field, every element with a size range. The pipeline
//!
//! 1. turns text into dark blobs ([`preprocess_viz`]),
//! 2. fixes text-row heights and field widths ([`fix_sizes`]),
//! 3. places rows and fields to minimise the brightness inside fields,
//!    exactly, by nested placement problems ([`segment_viz_fixed`]),
//! 4. lets field edges move within the template ranges to maximise the
//!    signed dispersion between field and gap pixels
//!    ([`refine_coordinate_descent`]).
//!
//! With field sizes fixed, class volumes are constant and the dispersion is
//! strictly decreasing in the field brightness, so step 3 also maximises the
//! dispersion over fixed-size layouts.

mod fixed;
mod layout;
mod refine;
mod sizes;
mod template;

pub use fixed::{row_cost_profile, segment_viz_fixed};
pub use layout::{layout_class_stats, FieldBox, Span, VizLayout};
pub use refine::{refine_coordinate_descent, Refinement};
pub use sizes::{fix_sizes, FixedRow, FixedSizes};
pub use template::{validate_template, BlockKind, BlockSpec, RowKind, RowSpec, SizeRange, VizTemplate};

pub(crate) use sizes::fit_extent;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::imaging::{integral, preprocess_viz, ClassStats, GrayImage, ImagingError, PreprocessParams};

#[derive(Debug, Error)]
pub enum VizError {
    #[error("template alternation violated: {0}")]
    AlternationViolation(String),
    #[error("template has no text rows")]
    NoTextRows,
    #[error("text row {row} has no field")]
    NoFields { row: usize },
    #[error("{what} range [{min}, {max}] is inverted")]
    InvalidRange { what: String, min: usize, max: usize },
    #[error("row heights span [{min}, {max}] but the image is {height} px tall")]
    HeightRangeInfeasible { min: usize, max: usize, height: usize },
    #[error("row {row} block widths span [{min}, {max}] but the image is {width} px wide")]
    WidthRangeInfeasible {
        row: usize,
        min: usize,
        max: usize,
        width: usize,
    },
    #[error("{0}")]
    SizesMismatch(String),
    #[error("no layout satisfies the template")]
    Infeasible,
    #[error(transparent)]
    Imaging(#[from] ImagingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VizOptions {
    pub preprocess: PreprocessParams,
    /// Refinement sweeps; one sweep is usually best, later sweeps can
    /// shrink fields whose text is lighter than the rest.
    pub max_iters: usize,
    pub refine: bool,
}

impl Default for VizOptions {
    fn default() -> Self {
        Self {
            preprocess: PreprocessParams::default(),
            max_iters: 1,
            refine: true,
        }
    }
}

/// Wall-clock time of each pipeline stage.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct StageTimings(pub Vec<(&'static str, Duration)>);

impl StageTimings {
    fn time<T>(&mut self, stage: &'static str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.0.push((stage, start.elapsed()));
        out
    }
}

#[derive(Debug, Clone)]
pub struct VizOutcome {
    pub layout: VizLayout,
    pub sizes: FixedSizes,
    /// In-field brightness of the fixed-size optimum.
    pub fixed_s1: u64,
    /// Class totals of the returned layout on the preprocessed image.
    pub stats: ClassStats,
    pub dispersion: f64,
    pub iterations: usize,
    pub history: Vec<f64>,
    pub timings: StageTimings,
}

/// Full pipeline: preprocessing, fixed-size placement, refinement.
pub fn segment_viz(img: &GrayImage, tpl: &VizTemplate, opts: &VizOptions) -> Result<VizOutcome, VizError> {
    let (w, h) = (img.width(), img.height());
    tpl.validate(w, h)?;
    let mut timings = StageTimings::default();

    let prepared = timings.time("preprocess", || preprocess_viz(img, &opts.preprocess))?;
    let ii = timings.time("integral", || integral(&prepared));
    let sizes = fix_sizes(tpl, w, h)?;
    let layout = timings.time("fixed", || segment_viz_fixed(&ii, tpl, &sizes))?;
    let fixed_s1 = layout_class_stats(&ii, &layout).s1;

    let iters = if opts.refine { opts.max_iters } else { 0 };
    let refined = timings.time("refine", || refine_coordinate_descent(&ii, &layout, tpl, iters));
    let stats = layout_class_stats(&ii, &refined.layout);
    Ok(VizOutcome {
        dispersion: stats.dispersion(),
        layout: refined.layout,
        sizes,
        fixed_s1,
        stats,
        iterations: refined.iterations,
        history: refined.history,
        timings,
    })
}
