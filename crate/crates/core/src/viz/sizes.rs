use serde::{Deserialize, Serialize};

use super::template::{SizeRange, VizTemplate};
use super::VizError;

/// Fixed height and field widths of one text row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedRow {
    /// Template row index.
    pub row: usize,
    pub height: usize,
    pub field_widths: Vec<usize>,
}

/// Sizes held constant during the dynamic-programming stage.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedSizes {
    pub rows: Vec<FixedRow>,
}

/// Chooses a fixed height for every text row and a fixed width for every
/// field: the range midpoint, then, if the gap elements could no longer
/// absorb the rest of the image extent, the excess is taken from (or added
/// to) the fixed sizes in proportion to their slack.
pub fn fix_sizes(tpl: &VizTemplate, width: usize, height: usize) -> Result<FixedSizes, VizError> {
    tpl.validate(width, height)?;

    let (text, gaps): (Vec<_>, Vec<_>) = tpl.rows.iter().partition(|r| r.is_text());
    let text_ranges: Vec<SizeRange> = text.iter().map(|r| r.h).collect();
    let gap_ranges: Vec<SizeRange> = gaps.iter().map(|r| r.h).collect();
    let heights = fit_extent(&text_ranges, &gap_ranges, height).ok_or(VizError::Infeasible)?;

    let mut rows = Vec::new();
    for ((row_index, row), height) in tpl.text_rows().zip(heights) {
        let (fields, gaps): (Vec<_>, Vec<_>) = row.blocks.iter().partition(|b| {
            b.kind == super::template::BlockKind::Field
        });
        let field_ranges: Vec<SizeRange> = fields.iter().map(|b| b.w).collect();
        let gap_ranges: Vec<SizeRange> = gaps.iter().map(|b| b.w).collect();
        let field_widths =
            fit_extent(&field_ranges, &gap_ranges, width).ok_or(VizError::Infeasible)?;
        rows.push(FixedRow {
            row: row_index,
            height,
            field_widths,
        });
    }
    Ok(FixedSizes { rows })
}

/// Picks one value per `fixed` range so that the `free` ranges can still
/// sum to `extent` with the picked values. Returns `None` when no choice
/// exists.
pub(crate) fn fit_extent(fixed: &[SizeRange], free: &[SizeRange], extent: usize) -> Option<Vec<usize>> {
    let mut values: Vec<usize> = fixed.iter().map(SizeRange::midpoint).collect();
    let sum: usize = values.iter().sum();
    let free_min: usize = free.iter().map(|r| r.min).sum();
    let free_max: usize = free.iter().map(|r| r.max).sum();

    if sum + free_min > extent {
        let slack: Vec<usize> = values.iter().zip(fixed).map(|(v, r)| v - r.min).collect();
        let shares = distribute(sum + free_min - extent, &slack)?;
        values.iter_mut().zip(shares).for_each(|(v, s)| *v -= s);
    } else if sum + free_max < extent {
        let slack: Vec<usize> = values.iter().zip(fixed).map(|(v, r)| r.max - v).collect();
        let shares = distribute(extent - sum - free_max, &slack)?;
        values.iter_mut().zip(shares).for_each(|(v, s)| *v += s);
    }
    Some(values)
}

/// Splits `amount` into integer shares proportional to `slack` (largest
/// remainder, earlier index first on equal remainders), never exceeding a
/// slack.
fn distribute(amount: usize, slack: &[usize]) -> Option<Vec<usize>> {
    let total: usize = slack.iter().sum();
    if total < amount {
        return None;
    }
    if amount == 0 {
        return Some(vec![0; slack.len()]);
    }
    let (amount, total) = (amount as u128, total as u128);
    let mut shares: Vec<usize> = slack
        .iter()
        .map(|&s| (amount * s as u128 / total) as usize)
        .collect();
    let mut left = amount as usize - shares.iter().sum::<usize>();
    let mut order: Vec<usize> = (0..slack.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(amount * slack[i] as u128 % total));
    for i in order {
        if left == 0 {
            break;
        }
        if shares[i] < slack[i] {
            shares[i] += 1;
            left -= 1;
        }
    }
    Some(shares)
}
