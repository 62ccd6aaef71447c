//! Slow solvers used for differential testing and benchmarking.

use super::problem::check_shapes;
use super::solver::leftmost_min;
use super::{Cost, CostMatrix, DistanceBounds, DspError, Solution};

const NO_INDEX: usize = usize::MAX;

/// Largest instance [`solve_brute_force`] accepts.
pub const BRUTE_FORCE_MAX_PARTS: usize = 6;
pub const BRUTE_FORCE_MAX_POSITIONS: usize = 40;

/// Same recurrences as [`super::solve_dsp`], but each range minimum is found by
/// scanning the whole predecessor window: O(N·W·K) for window width K.
pub fn solve_dsp_naive<T: Cost>(
    costs: &CostMatrix<T>,
    bounds: &DistanceBounds,
) -> Result<Solution<T>, DspError> {
    check_shapes(costs, bounds)?;
    let (n, w) = (costs.n_parts(), costs.n_positions());
    let mut cum = costs.row(0).to_vec();
    let mut next = vec![T::INFINITY; w];
    let mut pred = vec![NO_INDEX; (n - 1) * w];

    for part in 1..n {
        let (lo, hi) = bounds.link(part - 1);
        for j in 0..w {
            let from = (j as i64).saturating_sub(hi).max(0);
            let to = (j as i64).saturating_sub(lo).min(w as i64 - 1);
            let mut best = (NO_INDEX, T::INFINITY);
            let mut p = from;
            while p <= to {
                let v = cum[p as usize];
                if best.0 == NO_INDEX || v < best.1 {
                    best = (p as usize, v);
                }
                p += 1;
            }
            pred[(part - 1) * w + j] = best.0;
            next[j] = best.1.plus(costs.get(part, j));
        }
        std::mem::swap(&mut cum, &mut next);
    }

    let (mut pos, objective) = leftmost_min(&cum);
    if objective.is_infinite() {
        return Ok(Solution::infeasible());
    }
    let mut locations = vec![0; n];
    locations[n - 1] = pos;
    for part in (1..n).rev() {
        pos = pred[(part - 1) * w + pos];
        locations[part - 1] = pos;
    }
    Ok(Solution {
        locations,
        objective,
    })
}

/// Exhaustive enumeration of every placement that satisfies the links.
///
/// Among optimal placements it returns the one whose location tuple, read
/// from the last part backwards, is lexicographically smallest, which is
/// the order the dynamic program breaks ties in.
pub fn solve_brute_force<T: Cost>(
    costs: &CostMatrix<T>,
    bounds: &DistanceBounds,
) -> Result<Solution<T>, DspError> {
    check_shapes(costs, bounds)?;
    let (n, w) = (costs.n_parts(), costs.n_positions());
    if n > BRUTE_FORCE_MAX_PARTS || w > BRUTE_FORCE_MAX_POSITIONS {
        return Err(DspError::InstanceTooLarge {
            parts: n,
            positions: w,
        });
    }

    let mut search = Search {
        costs,
        bounds,
        current: Vec::with_capacity(n),
        best: None,
    };
    for start in 0..w {
        search.extend(start, T::ZERO);
    }
    Ok(match search.best {
        Some((objective, locations)) => Solution {
            locations,
            objective,
        },
        None => Solution::infeasible(),
    })
}

struct Search<'a, T> {
    costs: &'a CostMatrix<T>,
    bounds: &'a DistanceBounds,
    current: Vec<usize>,
    best: Option<(T, Vec<usize>)>,
}

impl<T: Cost> Search<'_, T> {
    fn extend(&mut self, pos: usize, partial: T) {
        let part = self.current.len();
        let total = partial.plus(self.costs.get(part, pos));
        if total.is_infinite() {
            return;
        }
        // Costs are non-negative, so a strictly worse prefix cannot recover.
        if let Some((best, _)) = &self.best {
            if total > *best {
                return;
            }
        }
        self.current.push(pos);
        if part + 1 == self.costs.n_parts() {
            let better = match &self.best {
                None => true,
                Some((best, locs)) => {
                    total < *best || (total == *best && reversed_less(&self.current, locs))
                }
            };
            if better {
                self.best = Some((total, self.current.clone()));
            }
        } else {
            let (lo, hi) = self.bounds.link(part);
            let w = self.costs.n_positions() as i64;
            let from = (pos as i64 + lo).max(0);
            let to = (pos as i64 + hi).min(w - 1);
            for next in from..=to {
                self.extend(next as usize, total);
            }
        }
        self.current.pop();
    }
}

fn reversed_less(a: &[usize], b: &[usize]) -> bool {
    a.iter().rev().lt(b.iter().rev())
}
