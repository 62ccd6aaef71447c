//! Exact minimisation of the in-field brightness for fixed row heights and
//! field widths, as two nested placement problems: fields along x for every
//! candidate row top, then text rows along y.

use rayon::prelude::*;

use super::layout::VizLayout;
use super::sizes::{FixedRow, FixedSizes};
use super::template::{RowSpec, SizeRange, VizTemplate};
use super::VizError;
use crate::dsp::{self, Cost, CostMatrix, DistanceBounds, Solution};
use crate::imaging::IntegralImage;

const INF: u64 = u64::INFINITY;

/// Horizontal placement problem of one text row.
struct RowModel {
    height: usize,
    widths: Vec<usize>,
    /// Gap ranges: before the first field, between fields, after the last.
    gaps: Vec<SizeRange>,
}

impl RowModel {
    fn new(row: &RowSpec, fixed: &FixedRow) -> Self {
        let gaps = row.blocks.iter().step_by(2).map(|b| b.w).collect();
        Self {
            height: fixed.height,
            widths: fixed.field_widths.clone(),
            gaps,
        }
    }

    fn bounds(&self) -> DistanceBounds {
        let (t_min, t_max) = self.widths[..self.widths.len() - 1]
            .iter()
            .zip(&self.gaps[1..])
            .map(|(&w, g)| ((w + g.min) as i64, (w + g.max) as i64))
            .unzip();
        DistanceBounds::new(t_min, t_max).expect("gap ranges are ordered")
    }

    /// Costs over x ∈ [0, width]: window sums where the field fits, with
    /// the outer gap ranges masking the first and last field.
    fn costs(&self, ii: &IntegralImage, y: usize) -> CostMatrix<u64> {
        let width = ii.width();
        let n = self.widths.len();
        let mut data = vec![INF; n * (width + 1)];
        for (m, &w) in self.widths.iter().enumerate() {
            let row = &mut data[m * (width + 1)..(m + 1) * (width + 1)];
            for (x, c) in row.iter_mut().enumerate().take((width + 1).saturating_sub(w)) {
                *c = ii.sum(x, y, w, self.height);
            }
        }
        let mut costs = CostMatrix::new(n, width + 1, data).expect("shape is consistent");
        let first = self.gaps[0];
        costs.restrict(0, first.min as i64, first.max as i64);
        let last = self.gaps[n];
        let w_last = self.widths[n - 1] as i64;
        costs.restrict(
            n - 1,
            width as i64 - last.max as i64 - w_last,
            width as i64 - last.min as i64 - w_last,
        );
        costs
    }

    fn place(&self, ii: &IntegralImage, y: usize, bounds: &DistanceBounds) -> Solution<u64> {
        dsp::solve(&self.costs(ii, y), bounds).expect("link count matches field count")
    }

    /// Minimum in-field brightness for each row top `y ∈ [0, H]`.
    fn profile(&self, ii: &IntegralImage) -> Vec<u64> {
        let height = ii.height();
        let bounds = self.bounds();
        (0..=height)
            .into_par_iter()
            .map(|y| {
                if y + self.height > height {
                    INF
                } else {
                    self.place(ii, y, &bounds).objective
                }
            })
            .collect()
    }
}

fn text_row_spec<'a>(tpl: &'a VizTemplate, fixed: &FixedRow) -> Result<&'a RowSpec, VizError> {
    match tpl.rows.get(fixed.row) {
        Some(spec) if spec.is_text() && spec.fields().count() == fixed.field_widths.len() => Ok(spec),
        _ => Err(VizError::SizesMismatch(format!(
            "fixed sizes for row {} do not match the template",
            fixed.row
        ))),
    }
}

/// Smallest total field brightness of a text row for every row top
/// `y ∈ [0, H]` (the result has `H + 1` entries). Tops where the row does
/// not fit or no field placement satisfies the gap ranges are `u64::MAX`.
pub fn row_cost_profile(ii: &IntegralImage, row: &RowSpec, fixed: &FixedRow) -> Vec<u64> {
    RowModel::new(row, fixed).profile(ii)
}

/// Finds the layout with fixed sizes `sizes` that minimises the total
/// brightness inside fields.
pub fn segment_viz_fixed(
    ii: &IntegralImage,
    tpl: &VizTemplate,
    sizes: &FixedSizes,
) -> Result<VizLayout, VizError> {
    let (width, height) = (ii.width(), ii.height());
    tpl.validate(width, height)?;
    let text_count = tpl.text_rows().count();
    if sizes.rows.len() != text_count {
        return Err(VizError::SizesMismatch(format!(
            "{} fixed rows for {} text rows",
            sizes.rows.len(),
            text_count
        )));
    }
    let models = sizes
        .rows
        .iter()
        .map(|f| text_row_spec(tpl, f).map(|spec| RowModel::new(spec, f)))
        .collect::<Result<Vec<_>, _>>()?;

    let mut data = Vec::with_capacity(text_count * (height + 1));
    for model in &models {
        data.extend(model.profile(ii));
    }
    let mut costs = CostMatrix::new(text_count, height + 1, data).expect("shape is consistent");

    let first_gap = tpl.rows[0].h;
    costs.restrict(0, first_gap.min as i64, first_gap.max as i64);
    let last_gap = tpl.rows[tpl.rows.len() - 1].h;
    let last_h = models[text_count - 1].height as i64;
    costs.restrict(
        text_count - 1,
        height as i64 - last_gap.max as i64 - last_h,
        height as i64 - last_gap.min as i64 - last_h,
    );

    let (t_min, t_max) = sizes.rows[..text_count - 1]
        .iter()
        .zip(&models)
        .map(|(f, m)| {
            let gap = tpl.rows[f.row + 1].h;
            ((m.height + gap.min) as i64, (m.height + gap.max) as i64)
        })
        .unzip();
    let bounds = DistanceBounds::new(t_min, t_max).expect("gap ranges are ordered");

    let outer = dsp::solve(&costs, &bounds).expect("link count matches row count");
    if !outer.is_feasible() {
        return Err(VizError::Infeasible);
    }

    let mut row_heights = Vec::with_capacity(tpl.rows.len());
    let mut block_widths = vec![Vec::new(); tpl.rows.len()];
    let mut cursor = 0;
    for ((model, fixed), &top) in models.iter().zip(&sizes.rows).zip(&outer.locations) {
        row_heights.push(top - cursor);
        row_heights.push(model.height);
        cursor = top + model.height;

        let inner = model.place(ii, top, &model.bounds());
        debug_assert!(inner.is_feasible());
        let mut widths = Vec::with_capacity(2 * model.widths.len() + 1);
        let mut x = 0;
        for (&left, &w) in inner.locations.iter().zip(&model.widths) {
            widths.push(left - x);
            widths.push(w);
            x = left + w;
        }
        widths.push(width - x);
        block_widths[fixed.row] = widths;
    }
    row_heights.push(height - cursor);

    let layout = VizLayout::from_sizes(tpl, width, height, &row_heights, &block_widths);
    debug_assert_eq!(layout.check_cover(tpl), Ok(()));
    Ok(layout)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Rect;
    use crate::imaging::{integral, GrayImage};
    use crate::viz::template::BlockSpec;
    use crate::viz::{fix_sizes, layout_class_stats};

    fn single_field_template(w: usize, h: usize) -> VizTemplate {
        VizTemplate::new(vec![
            RowSpec::gap(0, h),
            RowSpec::text(3, 3, vec![BlockSpec::gap(0, 0), BlockSpec::field(w, w), BlockSpec::gap(0, 0)]),
            RowSpec::gap(0, h),
        ])
    }

    #[test]
    fn full_width_field_profile() {
        let img = GrayImage::from_fn(7, 6, |x, y| (x * 10 + y * 3) as u8);
        let ii = integral(&img);
        let tpl = single_field_template(7, 6);
        let fixed = FixedRow { row: 1, height: 3, field_widths: vec![7] };
        let profile = row_cost_profile(&ii, &tpl.rows[1], &fixed);
        assert_eq!(profile.len(), 7);
        for (y, &v) in profile.iter().enumerate() {
            if y + 3 <= 6 {
                assert_eq!(v, ii.sum(0, y, 7, 3));
            } else {
                assert_eq!(v, INF);
            }
        }
    }

    #[test]
    fn blank_image_profile_is_zero() {
        let ii = integral(&GrayImage::filled(12, 8, 0));
        let tpl = VizTemplate::new(vec![
            RowSpec::gap(0, 8),
            RowSpec::text(3, 3, vec![BlockSpec::gap(0, 5), BlockSpec::field(4, 4), BlockSpec::gap(0, 12)]),
            RowSpec::gap(0, 8),
        ]);
        let fixed = FixedRow { row: 1, height: 3, field_widths: vec![4] };
        let profile = row_cost_profile(&ii, &tpl.rows[1], &fixed);
        assert!(profile[..=5].iter().all(|&v| v == 0));
        assert!(profile[6..].iter().all(|&v| v == INF));
    }

    #[test]
    fn dark_block_row_found_by_profile() {
        let mut img = GrayImage::filled(20, 10, 200);
        for y in 4..7 {
            for x in 11..16 {
                img.set(x, y, 10);
            }
        }
        let ii = integral(&img);
        let tpl = VizTemplate::new(vec![
            RowSpec::gap(0, 10),
            RowSpec::text(3, 3, vec![BlockSpec::gap(0, 20), BlockSpec::field(5, 5), BlockSpec::gap(0, 20)]),
            RowSpec::gap(0, 10),
        ]);
        let fixed = FixedRow { row: 1, height: 3, field_widths: vec![5] };
        let profile = row_cost_profile(&ii, &tpl.rows[1], &fixed);

        // exhaustive (x, y) scan
        let mut best = (u64::MAX, 0);
        for y in 0..=7 {
            for x in 0..=15 {
                let s = ii.sum(x, y, 5, 3);
                if s < best.0 {
                    best = (s, y);
                }
            }
        }
        let argmin = profile.iter().enumerate().min_by_key(|(_, &v)| v).unwrap().0;
        assert_eq!(argmin, best.1);
        assert_eq!(argmin, 4);
    }

    #[test]
    fn blank_image_gives_leftmost_layout() {
        let ii = integral(&GrayImage::filled(30, 20, 0));
        let tpl = VizTemplate::new(vec![
            RowSpec::gap(2, 8),
            RowSpec::text(3, 5, vec![BlockSpec::gap(1, 6), BlockSpec::field(5, 9), BlockSpec::gap(1, 30)]),
            RowSpec::gap(2, 8),
            RowSpec::text(3, 5, vec![BlockSpec::gap(0, 6), BlockSpec::field(4, 8), BlockSpec::gap(1, 30)]),
            RowSpec::gap(1, 20),
        ]);
        let sizes = fix_sizes(&tpl, 30, 20).unwrap();
        let layout = segment_viz_fixed(&ii, &tpl, &sizes).unwrap();
        layout.check_cover(&tpl).unwrap();
        assert_eq!(
            layout.field_rects(),
            vec![Rect::new(1, 2, 7, 4), Rect::new(0, 8, 6, 4)]
        );
    }

    #[test]
    fn recovers_planted_fields() {
        let tpl = VizTemplate::new(vec![
            RowSpec::gap(2, 10),
            RowSpec::text(
                4,
                4,
                vec![BlockSpec::gap(0, 10), BlockSpec::field(6, 6), BlockSpec::gap(2, 12), BlockSpec::field(5, 5), BlockSpec::gap(0, 20)],
            ),
            RowSpec::gap(2, 10),
            RowSpec::text(3, 3, vec![BlockSpec::gap(0, 20), BlockSpec::field(8, 8), BlockSpec::gap(0, 20)]),
            RowSpec::gap(1, 20),
        ]);
        let truth = [Rect::new(3, 5, 6, 4), Rect::new(16, 5, 5, 4), Rect::new(10, 14, 8, 3)];
        let mut img = GrayImage::filled(32, 24, 220);
        for r in &truth {
            for y in r.y..r.bottom() {
                for x in r.x..r.right() {
                    img.set(x, y, 20);
                }
            }
        }
        let ii = integral(&img);
        let sizes = fix_sizes(&tpl, 32, 24).unwrap();
        let layout = segment_viz_fixed(&ii, &tpl, &sizes).unwrap();
        assert_eq!(layout.field_rects(), truth.to_vec());
        let s1 = layout_class_stats(&ii, &layout).s1;
        assert_eq!(s1, truth.iter().map(|r| r.area() as u64 * 20).sum::<u64>());
    }

    #[test]
    fn reports_infeasible_outer_problem() {
        // a 2-px row starting at y = 5 leaves 5 px below, but the last gap
        // allows at most 4
        let tpl = VizTemplate::new(vec![
            RowSpec::gap(5, 5),
            RowSpec::text(2, 4, vec![BlockSpec::gap(0, 9), BlockSpec::field(3, 3), BlockSpec::gap(0, 9)]),
            RowSpec::gap(2, 4),
        ]);
        let ii = integral(&GrayImage::filled(10, 12, 9));
        let sizes = FixedSizes { rows: vec![FixedRow { row: 1, height: 2, field_widths: vec![3] }] };
        assert!(matches!(segment_viz_fixed(&ii, &tpl, &sizes), Err(VizError::Infeasible)));
    }
}
