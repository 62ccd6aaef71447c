//! Coordinate-descent refinement of field rectangles.
//!
//! Each sweep visits the fields in reading order and, for each, its left,
//! right, top and bottom edge. An edge jumps to the admissible coordinate
//! with the largest signed dispersion if that strictly beats the current
//! value; ties keep the smaller coordinate. Class totals are updated from
//! window-sum deltas, so a candidate costs O(1).
//!
//! Admissible coordinates keep the field's width and height in their
//! template ranges and keep the neighbouring gap blocks in theirs. A
//! field's top (bottom) is further tied to the gap row above (below): that
//! row's far edge stays where the fixed-size stage put it, so the gap's
//! height range bounds the move. Fields never overlap fields of the
//! neighbouring text rows.

use super::layout::{layout_class_stats, VizLayout};
use super::template::{SizeRange, VizTemplate};
use crate::geometry::Rect;
use crate::imaging::{ClassStats, IntegralImage};

/// Result of [`refine_coordinate_descent`].
#[derive(Debug, Clone, PartialEq)]
pub struct Refinement {
    pub layout: VizLayout,
    /// Sweeps performed, including a final idle one.
    pub iterations: usize,
    /// Signed dispersion before refinement, then after every accepted move.
    pub history: Vec<f64>,
}

impl Refinement {
    pub fn dispersion(&self) -> f64 {
        *self.history.last().expect("history starts with the initial value")
    }
}

#[derive(Debug, Clone, Copy)]
enum Edge {
    Left,
    Right,
    Top,
    Bottom,
}

struct FieldContext {
    text_row: usize,
    width: SizeRange,
    height: SizeRange,
    gap_left: SizeRange,
    gap_right: SizeRange,
    /// Allowed tops from the gap row above, and bottoms from the one below.
    top_window: (i64, i64),
    bottom_window: (i64, i64),
    prev_in_row: Option<usize>,
    next_in_row: Option<usize>,
}

struct Refiner<'a> {
    ii: &'a IntegralImage,
    rects: Vec<Rect>,
    ctx: Vec<FieldContext>,
    /// Field indices of each text row, in text-row order.
    row_members: Vec<Vec<usize>>,
    stats: ClassStats,
    value: f64,
}

impl<'a> Refiner<'a> {
    fn new(ii: &'a IntegralImage, layout: &VizLayout, tpl: &VizTemplate) -> Self {
        let text_rows: Vec<usize> = tpl.text_rows().map(|(i, _)| i).collect();
        let mut row_members = vec![Vec::new(); text_rows.len()];
        let mut ctx = Vec::with_capacity(layout.fields.len());

        for (k, f) in layout.fields.iter().enumerate() {
            let text_row = text_rows
                .iter()
                .position(|&r| r == f.row)
                .expect("fields live in text rows");
            let row = &tpl.rows[f.row];
            let (above, below) = (&tpl.rows[f.row - 1], &tpl.rows[f.row + 1]);
            let anchor_top = layout.rows[f.row - 1].start as i64;
            let anchor_bottom = layout.rows[f.row + 1].end as i64;

            let members = &mut row_members[text_row];
            let prev_in_row = members.last().copied();
            members.push(k);

            ctx.push(FieldContext {
                text_row,
                width: row.blocks[f.block].w,
                height: row.h,
                gap_left: row.blocks[f.block - 1].w,
                gap_right: row.blocks[f.block + 1].w,
                top_window: (
                    anchor_top + above.h.min as i64,
                    anchor_top + above.h.max as i64,
                ),
                bottom_window: (
                    anchor_bottom - below.h.max as i64,
                    anchor_bottom - below.h.min as i64,
                ),
                prev_in_row,
                next_in_row: None,
            });
        }

        for members in &row_members {
            for pair in members.windows(2) {
                ctx[pair[0]].next_in_row = Some(pair[1]);
            }
        }

        let stats = layout_class_stats(ii, layout);
        Self {
            ii,
            rects: layout.field_rects(),
            ctx,
            row_members,
            stats,
            value: stats.dispersion(),
        }
    }

    /// Inclusive range of coordinates `edge` of field `k` may take.
    fn admissible(&self, k: usize, edge: Edge) -> (i64, i64) {
        let c = &self.ctx[k];
        let r = self.rects[k];
        let (left, right) = (r.x as i64, r.right() as i64);
        let (top, bottom) = (r.y as i64, r.bottom() as i64);
        let (w, h) = (self.ii.width() as i64, self.ii.height() as i64);
        let lo = |s: SizeRange| s.min as i64;
        let hi = |s: SizeRange| s.max as i64;

        match edge {
            Edge::Left => {
                let left_ref = c.prev_in_row.map_or(0, |p| self.rects[p].right() as i64);
                (
                    (right - hi(c.width)).max(left_ref + lo(c.gap_left)).max(0),
                    (right - lo(c.width)).min(left_ref + hi(c.gap_left)),
                )
            }
            Edge::Right => {
                let right_ref = c.next_in_row.map_or(w, |n| self.rects[n].x as i64);
                (
                    (left + lo(c.width)).max(right_ref - hi(c.gap_right)),
                    (left + hi(c.width)).min(right_ref - lo(c.gap_right)).min(w),
                )
            }
            Edge::Top => {
                let floor = c
                    .text_row
                    .checked_sub(1)
                    .and_then(|t| self.row_members[t].iter().map(|&i| self.rects[i].bottom()).max())
                    .unwrap_or(0) as i64;
                (
                    (bottom - hi(c.height)).max(c.top_window.0).max(floor).max(0),
                    (bottom - lo(c.height)).min(c.top_window.1),
                )
            }
            Edge::Bottom => {
                let ceiling = self
                    .row_members
                    .get(c.text_row + 1)
                    .and_then(|m| m.iter().map(|&i| self.rects[i].y).min())
                    .map_or(h, |v| v as i64);
                (
                    (top + lo(c.height)).max(c.bottom_window.0),
                    (top + hi(c.height)).min(c.bottom_window.1).min(ceiling).min(h),
                )
            }
        }
    }

    fn moved(rect: Rect, edge: Edge, coord: usize) -> Rect {
        match edge {
            Edge::Left => Rect::from_edges(coord, rect.y, rect.right(), rect.bottom()),
            Edge::Right => Rect::from_edges(rect.x, rect.y, coord, rect.bottom()),
            Edge::Top => Rect::from_edges(rect.x, coord, rect.right(), rect.bottom()),
            Edge::Bottom => Rect::from_edges(rect.x, rect.y, rect.right(), coord),
        }
    }

    fn stats_with(&self, old: &Rect, new: &Rect) -> ClassStats {
        let s = &self.stats;
        let q1 = s.q1 - old.area() as u64 + new.area() as u64;
        let s1 = s.s1 - self.ii.rect_sum(old) + self.ii.rect_sum(new);
        ClassStats::from_fields(s.q0 + s.q1, s.s0 + s.s1, q1, s1)
    }

    /// Moves one edge to its best coordinate. Returns true on a move.
    fn relax(&mut self, k: usize, edge: Edge, history: &mut Vec<f64>) -> bool {
        let (lo, hi) = self.admissible(k, edge);
        let old = self.rects[k];
        let mut best: Option<(Rect, ClassStats, f64)> = None;
        let mut best_value = self.value;
        for coord in lo.max(0)..=hi {
            let cand = Self::moved(old, edge, coord as usize);
            if cand == old {
                continue;
            }
            let stats = self.stats_with(&old, &cand);
            let v = stats.dispersion();
            if v > best_value {
                best_value = v;
                best = Some((cand, stats, v));
            }
        }
        match best {
            Some((rect, stats, v)) => {
                self.rects[k] = rect;
                self.stats = stats;
                self.value = v;
                history.push(v);
                true
            }
            None => false,
        }
    }

    fn sweep(&mut self, history: &mut Vec<f64>) -> bool {
        let mut moved = false;
        for k in 0..self.rects.len() {
            for edge in [Edge::Left, Edge::Right, Edge::Top, Edge::Bottom] {
                moved |= self.relax(k, edge, history);
            }
        }
        moved
    }
}

/// Improves the field rectangles of `layout` by coordinate descent on the
/// signed dispersion, for at most `max_iters` sweeps or until a sweep
/// makes no move.
pub fn refine_coordinate_descent(
    ii: &IntegralImage,
    layout: &VizLayout,
    tpl: &VizTemplate,
    max_iters: usize,
) -> Refinement {
    let mut refiner = Refiner::new(ii, layout, tpl);
    let mut history = vec![refiner.value];
    let mut iterations = 0;
    while iterations < max_iters {
        iterations += 1;
        if !refiner.sweep(&mut history) {
            break;
        }
    }

    let mut out = layout.clone();
    if iterations > 0 {
        for (f, r) in out.fields.iter_mut().zip(&refiner.rects) {
            f.rect = *r;
        }
        out.refined = true;
    }
    Refinement {
        layout: out,
        iterations,
        history,
    }
}
