use super::problem::check_shapes;
use super::window::{Index, WindowMin, NO_INDEX};
use super::{Cost, CostMatrix, DistanceBounds, DspError, Solution};

/// Intermediate tables of the linear-time solver.
///
/// `cumulative(i, j)` is the best total cost of parts `0..=i` with part `i`
/// at position `j`; `predecessor(i, j)` is the position of part `i - 1` on
/// that best chain. Part 0 has no predecessor row.
#[derive(Debug, Clone, PartialEq)]
pub struct DpTables<T> {
    n_parts: usize,
    n_positions: usize,
    cum: Vec<T>,
    pred: Vec<Index>,
}

impl<T: Cost> DpTables<T> {
    pub fn n_parts(&self) -> usize {
        self.n_parts
    }

    pub fn n_positions(&self) -> usize {
        self.n_positions
    }

    pub fn cumulative(&self, part: usize, position: usize) -> T {
        self.cum[part * self.n_positions + position]
    }

    pub fn cumulative_row(&self, part: usize) -> &[T] {
        &self.cum[part * self.n_positions..(part + 1) * self.n_positions]
    }

    /// Optimal position of part `part - 1` given part `part` at `position`.
    /// `None` for part 0 and where no predecessor position is in range.
    pub fn predecessor(&self, part: usize, position: usize) -> Option<usize> {
        if part == 0 {
            return None;
        }
        let p = self.pred[(part - 1) * self.n_positions + position];
        (p != NO_INDEX).then_some(p as usize)
    }

    /// Leftmost minimum of the last cumulative row, followed by the back
    /// traverse of the predecessor table.
    fn decode(&self) -> Solution<T> {
        let last = self.cumulative_row(self.n_parts - 1);
        let (mut pos, best) = leftmost_min(last);
        if best.is_infinite() {
            return Solution::infeasible();
        }
        let mut locations = vec![0; self.n_parts];
        locations[self.n_parts - 1] = pos;
        for part in (1..self.n_parts).rev() {
            let p = self.pred[(part - 1) * self.n_positions + pos];
            debug_assert_ne!(p, NO_INDEX);
            pos = p as usize;
            locations[part - 1] = pos;
        }
        Solution {
            locations,
            objective: best,
        }
    }
}

pub(crate) fn leftmost_min<T: Cost>(row: &[T]) -> (usize, T) {
    let mut best = (0, row[0]);
    for (j, &v) in row.iter().enumerate().skip(1) {
        if v < best.1 {
            best = (j, v);
        }
    }
    best
}

/// Minimises the summed placement cost subject to the interval links in
/// O(N·W) time.
///
/// Ties resolve to the smallest last location, then the smallest
/// predecessor at every back-traverse step. An instance with no feasible
/// placement yields [`Solution::infeasible`], not an error.
pub fn solve_dsp<T: Cost>(
    costs: &CostMatrix<T>,
    bounds: &DistanceBounds,
) -> Result<(Solution<T>, DpTables<T>), DspError> {
    check_shapes(costs, bounds)?;
    let (n, w) = (costs.n_parts(), costs.n_positions());

    let mut cum = vec![T::INFINITY; n * w];
    let mut pred = vec![NO_INDEX; (n - 1) * w];
    cum[..w].copy_from_slice(costs.row(0));

    let mut window = WindowMin::new();
    for part in 1..n {
        let (lo, hi) = bounds.link(part - 1);
        let (done, rest) = cum.split_at_mut(part * w);
        let prev = &done[(part - 1) * w..];
        let args = &mut pred[(part - 1) * w..part * w];
        let row = &mut rest[..w];
        window.run(prev, lo, hi, row, args);
        for (c, &own) in row.iter_mut().zip(costs.row(part)) {
            *c = c.plus(own);
        }
    }

    let tables = DpTables {
        n_parts: n,
        n_positions: w,
        cum,
        pred,
    };
    Ok((tables.decode(), tables))
}

/// [`solve_dsp`] without the tables.
pub fn solve<T: Cost>(costs: &CostMatrix<T>, bounds: &DistanceBounds) -> Result<Solution<T>, DspError> {
    solve_dsp(costs, bounds).map(|(s, _)| s)
}
