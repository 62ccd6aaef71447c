use serde::{Deserialize, Serialize};

use super::template::{BlockKind, VizTemplate};
use crate::geometry::Rect;
use crate::imaging::{ClassStats, IntegralImage};

/// Half-open interval `[start, end)` along one axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        Self { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

/// One field rectangle, tagged with its template position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldBox {
    pub row: usize,
    pub block: usize,
    pub rect: Rect,
}

/// Resolved segmentation of an inspection zone.
///
/// `rows` and `blocks` are the exact cover found by the fixed-size stage:
/// consecutive spans touch, the first starts at 0 and the last ends at the
/// image extent. `fields` lists the field rectangles in reading order. They
/// coincide with the cover until refinement moves them, after which
/// `refined` is set and only `fields` reflects the final result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VizLayout {
    pub width: usize,
    pub height: usize,
    pub rows: Vec<Span>,
    /// Block spans per template row, empty for gap rows.
    pub blocks: Vec<Vec<Span>>,
    pub fields: Vec<FieldBox>,
    pub refined: bool,
}

impl VizLayout {
    /// Builds a layout from a row cover and per-row block covers, taking
    /// field positions from the template's block kinds.
    pub fn from_cover(
        tpl: &VizTemplate,
        width: usize,
        height: usize,
        rows: Vec<Span>,
        blocks: Vec<Vec<Span>>,
    ) -> Self {
        let mut fields = Vec::new();
        for (i, row) in tpl.rows.iter().enumerate() {
            for (j, spec) in row.blocks.iter().enumerate() {
                if spec.kind == BlockKind::Field {
                    let (r, b) = (rows[i], blocks[i][j]);
                    fields.push(FieldBox {
                        row: i,
                        block: j,
                        rect: Rect::from_edges(b.start, r.start, b.end, r.end),
                    });
                }
            }
        }
        Self {
            width,
            height,
            rows,
            blocks,
            fields,
            refined: false,
        }
    }

    /// Builds a layout from element sizes (row heights, and block widths
    /// for text rows) laid end to end.
    pub fn from_sizes(
        tpl: &VizTemplate,
        width: usize,
        height: usize,
        row_heights: &[usize],
        block_widths: &[Vec<usize>],
    ) -> Self {
        let rows = stack(row_heights);
        let blocks = block_widths.iter().map(|w| stack(w)).collect();
        Self::from_cover(tpl, width, height, rows, blocks)
    }

    pub fn field_rects(&self) -> Vec<Rect> {
        self.fields.iter().map(|f| f.rect).collect()
    }

    /// Checks the exact-cover and size-range invariants against `tpl`.
    pub fn check_cover(&self, tpl: &VizTemplate) -> Result<(), String> {
        if self.rows.len() != tpl.rows.len() || self.blocks.len() != tpl.rows.len() {
            return Err("row count differs from template".into());
        }
        check_chain(&self.rows, self.height).map_err(|e| format!("rows: {e}"))?;
        for (i, (span, spec)) in self.rows.iter().zip(&tpl.rows).enumerate() {
            if !spec.h.contains(span.len()) {
                return Err(format!("row {i} height {} outside {:?}", span.len(), spec.h));
            }
            let blocks = &self.blocks[i];
            if blocks.len() != spec.blocks.len() {
                return Err(format!("row {i} block count differs from template"));
            }
            if spec.is_text() {
                check_chain(blocks, self.width).map_err(|e| format!("row {i} blocks: {e}"))?;
            }
            for (j, (b, bs)) in blocks.iter().zip(&spec.blocks).enumerate() {
                if !bs.w.contains(b.len()) {
                    return Err(format!("row {i} block {j} width {} outside {:?}", b.len(), bs.w));
                }
            }
        }
        Ok(())
    }

    /// Checks that every field rectangle lies in the image and respects its
    /// template width and its row's height range.
    pub fn check_field_ranges(&self, tpl: &VizTemplate) -> Result<(), String> {
        for f in &self.fields {
            let row = &tpl.rows[f.row];
            let spec = &row.blocks[f.block];
            if !f.rect.fits_in(self.width, self.height) {
                return Err(format!("field {:?} leaves the image", f));
            }
            if !spec.w.contains(f.rect.w) || !row.h.contains(f.rect.h) {
                return Err(format!("field {:?} violates template ranges", f));
            }
        }
        Ok(())
    }
}

fn stack(sizes: &[usize]) -> Vec<Span> {
    let mut at = 0;
    sizes
        .iter()
        .map(|&s| {
            let span = Span::new(at, at + s);
            at += s;
            span
        })
        .collect()
}

fn check_chain(spans: &[Span], extent: usize) -> Result<(), String> {
    let (Some(first), Some(last)) = (spans.first(), spans.last()) else {
        return Err("empty".into());
    };
    if first.start != 0 || last.end != extent {
        return Err(format!("does not span [0, {extent})"));
    }
    if let Some(k) = spans.windows(2).position(|w| w[0].end != w[1].start) {
        return Err(format!("gap or overlap after element {k}"));
    }
    Ok(())
}

/// Class volumes and brightness totals when field pixels form class 1 and
/// everything else class 0.
pub fn layout_class_stats(ii: &IntegralImage, layout: &VizLayout) -> ClassStats {
    let (q1, s1) = layout.fields.iter().fold((0u64, 0u64), |(q, s), f| {
        (q + f.rect.area() as u64, s + ii.rect_sum(&f.rect))
    });
    ClassStats::from_fields((ii.width() * ii.height()) as u64, ii.total(), q1, s1)
}
