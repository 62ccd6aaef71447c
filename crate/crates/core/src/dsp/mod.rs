//! Placement of a sequence of parts on a 1-D position grid.
//!
//! Each part `i` has a cost `m_i(j)` for every position `j`, and adjacent
//! parts are linked by an interval constraint
//! `t_min(i) <= l(i+1) - l(i) <= t_max(i)`. [`solve_dsp`] finds the placement
//! with the smallest total cost in O(N·W) by filling a cumulative-cost table
//! row by row, each row being a sliding-window minimum of the previous one.
//! [`solve_dsp_naive`] and [`solve_brute_force`] are slower references with
//! identical results and tie-breaking.

mod cost;
mod problem;
mod reference;
mod solver;
mod window;

pub use cost::Cost;
pub use problem::{CostMatrix, DistanceBounds, Solution};
pub use reference::{
    solve_brute_force, solve_dsp_naive, BRUTE_FORCE_MAX_PARTS, BRUTE_FORCE_MAX_POSITIONS,
};
pub use solver::{solve, solve_dsp, DpTables};
pub use window::{sliding_window_min, MAX_POSITIONS};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DspError {
    #[error("cost matrix needs at least one part and one position")]
    Empty,
    #[error("cost data has {got} entries, expected {expected}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("cost row {part} has {got} entries, expected {expected}")]
    RaggedRow {
        part: usize,
        expected: usize,
        got: usize,
    },
    #[error("cost at part {part}, position {position} is negative or NaN")]
    InvalidCost { part: usize, position: usize },
    #[error("t_min has {t_min} entries but t_max has {t_max}")]
    BoundsLength { t_min: usize, t_max: usize },
    #[error("link {link} has t_min {t_min} > t_max {t_max}")]
    InvertedBounds { link: usize, t_min: i64, t_max: i64 },
    #[error("{parts} parts need {} links, got {links}", parts.saturating_sub(1))]
    LinkCount { parts: usize, links: usize },
    #[error("{positions} positions exceed the limit of {MAX_POSITIONS}")]
    TooManyPositions { positions: usize },
    #[error("instance with {parts} parts and {positions} positions is too large to enumerate")]
    InstanceTooLarge { parts: usize, positions: usize },
}
