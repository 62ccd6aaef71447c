#![allow(dead_code)]

use rand::Rng;
use squeezebox::imaging::GrayImage;
use squeezebox::viz::{FixedSizes, SizeRange, VizLayout, VizTemplate};
use squeezebox::Rect;

/// Every sequence of values within `ranges` summing to `total`.
pub fn compositions(ranges: &[(usize, usize)], total: usize) -> Vec<Vec<usize>> {
    let Some((&(lo, hi), rest)) = ranges.split_first() else {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    };
    let rest_min: usize = rest.iter().map(|r| r.0).sum();
    let rest_max: usize = rest.iter().map(|r| r.1).sum();
    let mut out = Vec::new();
    for v in lo..=hi.min(total) {
        let left = total - v;
        if left < rest_min || left > rest_max {
            continue;
        }
        for mut tail in compositions(rest, left) {
            tail.insert(0, v);
            out.push(tail);
        }
    }
    out
}

fn pinned(r: SizeRange, fixed: Option<usize>) -> (usize, usize) {
    fixed.map_or((r.min, r.max), |v| (v, v))
}

/// Row-height sequences with text rows pinned to their fixed height.
pub fn row_choices(tpl: &VizTemplate, sizes: &FixedSizes, height: usize) -> Vec<Vec<usize>> {
    let ranges: Vec<(usize, usize)> = tpl
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| pinned(r.h, sizes.rows.iter().find(|f| f.row == i).map(|f| f.height)))
        .collect();
    compositions(&ranges, height)
}

/// Block-width sequences of template row `row` with fields pinned.
pub fn block_choices(tpl: &VizTemplate, sizes: &FixedSizes, row: usize, width: usize) -> Vec<Vec<usize>> {
    let fixed = sizes.rows.iter().find(|f| f.row == row).expect("text row");
    let mut fields = fixed.field_widths.iter();
    let ranges: Vec<(usize, usize)> = tpl.rows[row]
        .blocks
        .iter()
        .enumerate()
        .map(|(j, b)| pinned(b.w, (j % 2 == 1).then(|| *fields.next().unwrap())))
        .collect();
    compositions(&ranges, width)
}

/// All layouts with the fixed sizes of `sizes`.
pub fn all_layouts(tpl: &VizTemplate, sizes: &FixedSizes, width: usize, height: usize) -> Vec<VizLayout> {
    let per_row: Vec<Vec<Vec<usize>>> = (0..tpl.rows.len())
        .map(|i| {
            if tpl.rows[i].is_text() {
                block_choices(tpl, sizes, i, width)
            } else {
                vec![Vec::new()]
            }
        })
        .collect();
    let mut combos: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for choices in &per_row {
        combos = combos
            .into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |c| {
                    let mut next = prefix.clone();
                    next.push(c.clone());
                    next
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for heights in row_choices(tpl, sizes, height) {
        for widths in &combos {
            out.push(VizLayout::from_sizes(tpl, width, height, &heights, widths));
        }
    }
    out
}

/// Pixel-by-pixel sum over a rectangle.
pub fn naive_sum(img: &GrayImage, r: &Rect) -> u64 {
    (r.y..r.bottom())
        .flat_map(|y| (r.x..r.right()).map(move |x| (x, y)))
        .map(|(x, y)| img.get(x, y) as u64)
        .sum()
}

/// Field brightness of `layout`, pixel by pixel.
pub fn naive_s1(img: &GrayImage, layout: &VizLayout) -> u64 {
    layout.fields.iter().map(|f| naive_sum(img, &f.rect)).sum()
}

pub fn random_image(rng: &mut impl Rng, w: usize, h: usize) -> GrayImage {
    GrayImage::from_fn(w, h, |_, _| rng.random())
}
