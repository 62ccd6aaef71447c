//! JSON shapes shared by the segmenters and the synthesizers.

use serde::{Deserialize, Serialize};

use squeezebox::imaging::GrayImage;
use squeezebox::viz::{VizLayout, VizTemplate};
use squeezebox::Rect;

/// Field edges; `r` and `b` are exclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub l: usize,
    pub r: usize,
    pub t: usize,
    pub b: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TextRowJson {
    pub t: usize,
    pub b: usize,
    pub fields: Vec<FieldJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutJson {
    pub rows: Vec<TextRowJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objective_s1: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objective_v: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
}

impl LayoutJson {
    pub fn from_layout(tpl: &VizTemplate, layout: &VizLayout) -> Self {
        let rows = tpl
            .text_rows()
            .map(|(i, _)| TextRowJson {
                t: layout.rows[i].start,
                b: layout.rows[i].end,
                fields: layout
                    .fields
                    .iter()
                    .filter(|f| f.row == i)
                    .map(|f| FieldJson {
                        l: f.rect.x,
                        r: f.rect.right(),
                        t: f.rect.y,
                        b: f.rect.bottom(),
                    })
                    .collect(),
            })
            .collect();
        Self {
            rows,
            objective_s1: None,
            objective_v: None,
            iterations: None,
        }
    }
}

/// Draws the one-pixel outline of every box in black.
pub fn draw_boxes(img: &GrayImage, boxes: &[Rect]) -> GrayImage {
    let mut out = img.clone();
    for b in boxes.iter().filter(|b| !b.is_empty()) {
        for x in b.x..b.right() {
            out.set(x, b.y, 0);
            out.set(x, b.bottom() - 1, 0);
        }
        for y in b.y..b.bottom() {
            out.set(b.x, y, 0);
            out.set(b.right() - 1, y, 0);
        }
    }
    out
}
