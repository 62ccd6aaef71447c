use super::window::MAX_POSITIONS;
use super::{Cost, DspError};

/// Per-part, per-position placement costs, stored row-major (`n_parts` rows
/// of `n_positions` entries).
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix<T> {
    n_parts: usize,
    n_positions: usize,
    data: Vec<T>,
}

impl<T: Cost> CostMatrix<T> {
    pub fn new(n_parts: usize, n_positions: usize, data: Vec<T>) -> Result<Self, DspError> {
        if n_parts == 0 || n_positions == 0 {
            return Err(DspError::Empty);
        }
        if data.len() != n_parts * n_positions {
            return Err(DspError::ShapeMismatch {
                expected: n_parts * n_positions,
                got: data.len(),
            });
        }
        if let Some(idx) = data.iter().position(|c| !c.is_admissible()) {
            return Err(DspError::InvalidCost {
                part: idx / n_positions,
                position: idx % n_positions,
            });
        }
        Ok(Self {
            n_parts,
            n_positions,
            data,
        })
    }

    /// Builds a matrix from equally long rows.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, DspError> {
        let n_parts = rows.len();
        let n_positions = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != n_positions) {
            return Err(DspError::RaggedRow {
                part: bad,
                expected: n_positions,
                got: rows[bad].len(),
            });
        }
        Self::new(n_parts, n_positions, rows.into_iter().flatten().collect())
    }

    /// A matrix with every entry set to `value`.
    pub fn filled(n_parts: usize, n_positions: usize, value: T) -> Result<Self, DspError> {
        Self::new(n_parts, n_positions, vec![value; n_parts * n_positions])
    }

    pub fn n_parts(&self) -> usize {
        self.n_parts
    }

    pub fn n_positions(&self) -> usize {
        self.n_positions
    }

    #[inline]
    pub fn get(&self, part: usize, position: usize) -> T {
        self.data[part * self.n_positions + position]
    }

    /// Overwrites one entry. Panics on an inadmissible value.
    pub fn set(&mut self, part: usize, position: usize, value: T) {
        assert!(value.is_admissible(), "cost {value:?} is negative or NaN");
        self.data[part * self.n_positions + position] = value;
    }

    pub fn row(&self, part: usize) -> &[T] {
        let start = part * self.n_positions;
        &self.data[start..start + self.n_positions]
    }

    /// Mutable access to a row. Callers must keep entries admissible.
    pub(crate) fn row_mut(&mut self, part: usize) -> &mut [T] {
        let start = part * self.n_positions;
        &mut self.data[start..start + self.n_positions]
    }

    /// Marks every position outside `[first, last]` of `part` as forbidden.
    /// Bounds may lie outside the position range.
    pub fn restrict(&mut self, part: usize, first: i64, last: i64) {
        for (pos, c) in self.row_mut(part).iter_mut().enumerate() {
            let p = pos as i64;
            if p < first || p > last {
                *c = T::INFINITY;
            }
        }
    }

    /// Sum of `cost(i, locations[i])`, or `None` when lengths disagree or a
    /// location is out of range.
    pub fn placement_cost(&self, locations: &[usize]) -> Option<T> {
        if locations.len() != self.n_parts {
            return None;
        }
        let mut total = T::ZERO;
        for (part, &loc) in locations.iter().enumerate() {
            if loc >= self.n_positions {
                return None;
            }
            total = total.plus(self.get(part, loc));
        }
        Some(total)
    }
}

/// Interval constraints `t_min[i] <= l[i+1] - l[i] <= t_max[i]` on adjacent
/// part locations.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DistanceBounds {
    t_min: Vec<i64>,
    t_max: Vec<i64>,
}

impl DistanceBounds {
    pub fn new(t_min: Vec<i64>, t_max: Vec<i64>) -> Result<Self, DspError> {
        if t_min.len() != t_max.len() {
            return Err(DspError::BoundsLength {
                t_min: t_min.len(),
                t_max: t_max.len(),
            });
        }
        if let Some(link) = t_min.iter().zip(&t_max).position(|(a, b)| a > b) {
            return Err(DspError::InvertedBounds {
                link,
                t_min: t_min[link],
                t_max: t_max[link],
            });
        }
        Ok(Self { t_min, t_max })
    }

    /// Bounds for a single part (no links).
    pub fn none() -> Self {
        Self::default()
    }

    /// The same interval repeated for `links` links.
    pub fn uniform(links: usize, t_min: i64, t_max: i64) -> Result<Self, DspError> {
        Self::new(vec![t_min; links], vec![t_max; links])
    }

    pub fn len(&self) -> usize {
        self.t_min.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t_min.is_empty()
    }

    pub fn t_min(&self) -> &[i64] {
        &self.t_min
    }

    pub fn t_max(&self) -> &[i64] {
        &self.t_max
    }

    #[inline]
    pub fn link(&self, i: usize) -> (i64, i64) {
        (self.t_min[i], self.t_max[i])
    }

    /// True when every adjacent pair of `locations` respects its link.
    pub fn admits(&self, locations: &[usize]) -> bool {
        locations.len() == self.len() + 1
            && locations.windows(2).enumerate().all(|(i, w)| {
                let d = w[1] as i64 - w[0] as i64;
                self.t_min[i] <= d && d <= self.t_max[i]
            })
    }
}

pub(crate) fn check_shapes<T: Cost>(
    costs: &CostMatrix<T>,
    bounds: &DistanceBounds,
) -> Result<(), DspError> {
    if bounds.len() + 1 != costs.n_parts() {
        return Err(DspError::LinkCount {
            parts: costs.n_parts(),
            links: bounds.len(),
        });
    }
    if costs.n_positions() > MAX_POSITIONS {
        return Err(DspError::TooManyPositions {
            positions: costs.n_positions(),
        });
    }
    Ok(())
}

/// Optimal placement, or an infeasible marker.
///
/// Locations are 0-based position indices. When the instance admits no
/// placement, `objective` is `INFINITY` and `locations` is empty.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution<T> {
    pub locations: Vec<usize>,
    pub objective: T,
}

impl<T: Cost> Solution<T> {
    pub fn infeasible() -> Self {
        Self {
            locations: Vec::new(),
            objective: T::INFINITY,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.objective.is_finite()
    }
}
