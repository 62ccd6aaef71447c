use serde::{Deserialize, Serialize};

use super::VizError;

/// Inclusive size interval `[min, max]` in pixels, serialised as `[min, max]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct SizeRange {
    pub min: usize,
    pub max: usize,
}

impl SizeRange {
    pub const fn new(min: usize, max: usize) -> Self {
        Self { min, max }
    }

    pub const fn exact(v: usize) -> Self {
        Self { min: v, max: v }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.min <= v && v <= self.max
    }

    /// Midpoint, rounded half up.
    pub fn midpoint(&self) -> usize {
        (self.min + self.max).div_ceil(2)
    }

    pub fn slack(&self) -> usize {
        self.max - self.min
    }
}

impl From<[usize; 2]> for SizeRange {
    fn from([min, max]: [usize; 2]) -> Self {
        Self { min, max }
    }
}

impl From<SizeRange> for [usize; 2] {
    fn from(r: SizeRange) -> Self {
        [r.min, r.max]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowKind {
    Text,
    Gap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockKind {
    Field,
    Gap,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSpec {
    pub kind: BlockKind,
    pub w: SizeRange,
}

impl BlockSpec {
    pub fn field(min: usize, max: usize) -> Self {
        Self {
            kind: BlockKind::Field,
            w: SizeRange::new(min, max),
        }
    }

    pub fn gap(min: usize, max: usize) -> Self {
        Self {
            kind: BlockKind::Gap,
            w: SizeRange::new(min, max),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowSpec {
    pub kind: RowKind,
    pub h: SizeRange,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub blocks: Vec<BlockSpec>,
}

impl RowSpec {
    pub fn gap(min: usize, max: usize) -> Self {
        Self {
            kind: RowKind::Gap,
            h: SizeRange::new(min, max),
            blocks: Vec::new(),
        }
    }

    pub fn text(min: usize, max: usize, blocks: Vec<BlockSpec>) -> Self {
        Self {
            kind: RowKind::Text,
            h: SizeRange::new(min, max),
            blocks,
        }
    }

    pub fn is_text(&self) -> bool {
        self.kind == RowKind::Text
    }

    /// Field blocks as `(block index, spec)`.
    pub fn fields(&self) -> impl Iterator<Item = (usize, &BlockSpec)> {
        self.blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| b.kind == BlockKind::Field)
    }
}

/// Top-to-bottom rows alternating gap/text, starting and ending with a
/// gap; each text row is a left-to-right sequence of blocks alternating
/// gap/field, also starting and ending with a gap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VizTemplate {
    pub rows: Vec<RowSpec>,
}

impl VizTemplate {
    pub fn new(rows: Vec<RowSpec>) -> Self {
        Self { rows }
    }

    /// Text rows as `(row index, spec)`.
    pub fn text_rows(&self) -> impl Iterator<Item = (usize, &RowSpec)> {
        self.rows.iter().enumerate().filter(|(_, r)| r.is_text())
    }

    pub fn field_count(&self) -> usize {
        self.text_rows().map(|(_, r)| r.fields().count()).sum()
    }

    /// Checks the alternation rules and that the size ranges can tile a
    /// `width × height` image.
    pub fn validate(&self, width: usize, height: usize) -> Result<(), VizError> {
        validate_template(self, width, height)
    }
}

pub fn validate_template(tpl: &VizTemplate, width: usize, height: usize) -> Result<(), VizError> {
    let rows = &tpl.rows;
    if rows.is_empty() {
        return Err(VizError::NoTextRows);
    }
    for (i, row) in rows.iter().enumerate() {
        let expected = if i % 2 == 0 { RowKind::Gap } else { RowKind::Text };
        if row.kind != expected {
            return Err(VizError::AlternationViolation(format!(
                "row {i} is {:?}, expected {:?}",
                row.kind, expected
            )));
        }
        check_range(row.h, || format!("row {i} height"))?;
        match row.kind {
            RowKind::Gap if !row.blocks.is_empty() => {
                return Err(VizError::AlternationViolation(format!(
                    "gap row {i} must not have blocks"
                )));
            }
            RowKind::Gap => {}
            RowKind::Text => check_blocks(i, row)?,
        }
    }
    if rows.last().map(|r| r.kind) != Some(RowKind::Gap) {
        return Err(VizError::AlternationViolation(
            "last row must be a gap".into(),
        ));
    }
    if tpl.text_rows().next().is_none() {
        return Err(VizError::NoTextRows);
    }

    let min: usize = rows.iter().map(|r| r.h.min).sum();
    let max: usize = rows.iter().map(|r| r.h.max).sum();
    if height < min || height > max {
        return Err(VizError::HeightRangeInfeasible { min, max, height });
    }
    for (i, row) in tpl.text_rows() {
        let min: usize = row.blocks.iter().map(|b| b.w.min).sum();
        let max: usize = row.blocks.iter().map(|b| b.w.max).sum();
        if width < min || width > max {
            return Err(VizError::WidthRangeInfeasible {
                row: i,
                min,
                max,
                width,
            });
        }
    }
    Ok(())
}

fn check_blocks(row_index: usize, row: &RowSpec) -> Result<(), VizError> {
    let blocks = &row.blocks;
    if blocks.len() < 3 {
        return Err(VizError::NoFields { row: row_index });
    }
    for (j, block) in blocks.iter().enumerate() {
        let expected = if j % 2 == 0 { BlockKind::Gap } else { BlockKind::Field };
        if block.kind != expected {
            return Err(VizError::AlternationViolation(format!(
                "row {row_index} block {j} is {:?}, expected {:?}",
                block.kind, expected
            )));
        }
        check_range(block.w, || format!("row {row_index} block {j} width"))?;
    }
    if blocks.len() % 2 == 0 {
        return Err(VizError::AlternationViolation(format!(
            "row {row_index} must end with a gap block"
        )));
    }
    Ok(())
}

fn check_range(r: SizeRange, what: impl FnOnce() -> String) -> Result<(), VizError> {
    if r.min > r.max {
        return Err(VizError::InvalidRange {
            what: what(),
            min: r.min,
            max: r.max,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_line(gap: [usize; 2], text: [usize; 2]) -> VizTemplate {
        VizTemplate::new(vec![
            RowSpec::gap(gap[0], gap[1]),
            RowSpec::text(
                text[0],
                text[1],
                vec![BlockSpec::gap(0, 4), BlockSpec::field(6, 10), BlockSpec::gap(0, 4)],
            ),
            RowSpec::gap(gap[0], gap[1]),
        ])
    }

    #[test]
    fn height_interval_arithmetic() {
        let tpl = one_line([2, 4], [5, 9]);
        assert!(tpl.validate(10, 12).is_ok());
        assert!(matches!(
            tpl.validate(10, 8),
            Err(VizError::HeightRangeInfeasible { min: 9, max: 17, height: 8 })
        ));
        assert!(matches!(tpl.validate(10, 18), Err(VizError::HeightRangeInfeasible { .. })));
    }

    #[test]
    fn width_interval_arithmetic() {
        let tpl = one_line([2, 4], [5, 9]);
        assert!(tpl.validate(6, 12).is_ok());
        assert!(tpl.validate(18, 12).is_ok());
        assert!(matches!(tpl.validate(5, 12), Err(VizError::WidthRangeInfeasible { row: 1, .. })));
        assert!(matches!(tpl.validate(19, 12), Err(VizError::WidthRangeInfeasible { .. })));
    }

    #[test]
    fn alternation_rules() {
        let mut tpl = one_line([2, 4], [5, 9]);
        let text = tpl.rows[1].clone();
        tpl.rows.insert(2, text);
        assert!(matches!(tpl.validate(10, 20), Err(VizError::AlternationViolation(_))));

        let mut tpl = one_line([2, 4], [5, 9]);
        tpl.rows[1].blocks.swap(0, 1);
        assert!(matches!(tpl.validate(10, 12), Err(VizError::AlternationViolation(_))));

        let mut tpl = one_line([2, 4], [5, 9]);
        tpl.rows.pop();
        assert!(matches!(tpl.validate(10, 12), Err(VizError::AlternationViolation(_))));

        let mut tpl = one_line([2, 4], [5, 9]);
        tpl.rows[0].blocks.push(BlockSpec::gap(0, 1));
        assert!(matches!(tpl.validate(10, 12), Err(VizError::AlternationViolation(_))));
    }

    #[test]
    fn empty_and_fieldless_templates() {
        assert!(matches!(VizTemplate::new(vec![]).validate(5, 5), Err(VizError::NoTextRows)));
        let gap_only = VizTemplate::new(vec![RowSpec::gap(0, 10)]);
        assert!(matches!(gap_only.validate(5, 5), Err(VizError::NoTextRows)));

        let mut tpl = one_line([2, 4], [5, 9]);
        tpl.rows[1].blocks = vec![BlockSpec::gap(0, 20)];
        assert!(matches!(tpl.validate(10, 12), Err(VizError::NoFields { row: 1 })));
    }

    #[test]
    fn inverted_range() {
        let tpl = one_line([4, 2], [5, 9]);
        assert!(matches!(tpl.validate(10, 12), Err(VizError::InvalidRange { .. })));
    }

    #[test]
    fn json_schema() {
        let json = r#"{"rows":[{"kind":"gap","h":[2,6]},{"kind":"text","h":[8,12],"blocks":[{"kind":"gap","w":[0,4]},{"kind":"field","w":[30,60]},{"kind":"gap","w":[0,4]}]},{"kind":"gap","h":[2,6]}]}"#;
        let tpl: VizTemplate = serde_json::from_str(json).unwrap();
        assert_eq!(tpl.rows[1].h, SizeRange::new(8, 12));
        assert_eq!(tpl.rows[1].blocks[1], BlockSpec::field(30, 60));
        assert_eq!(serde_json::to_string(&tpl).unwrap(), json);
    }
}
