//! Range minima over a sliding offset window (van Herk / Gil-Werman).
//!
//! For every position `j` the window is `[j - hi, j - lo]` clipped to the
//! array. Values are split into blocks of the window length; a forward pass
//! records block-prefix minima and a backward pass block-suffix minima, so
//! every clipped window is answered from at most two table entries. Work is
//! O(W) regardless of the window width.

use super::Cost;

/// Position index as stored in argmin tables. Half the width of `usize`,
/// which keeps a row's working set in cache for twice as many positions.
pub(crate) type Index = u32;

/// Marker stored in argmin tables for positions whose window is empty.
pub(crate) const NO_INDEX: Index = Index::MAX;

/// Largest number of positions an argmin table can address.
pub const MAX_POSITIONS: usize = NO_INDEX as usize;

/// Reusable scratch buffers for [`sliding_window_min`].
#[derive(Debug, Default)]
pub(crate) struct WindowMin {
    prefix: Vec<Index>,
    suffix: Vec<Index>,
}

impl WindowMin {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    /// Fills `mins`/`args` for `values` and the offset window `[lo, hi]`.
    /// Ties resolve to the smallest index; empty windows give `INFINITY`
    /// and [`NO_INDEX`].
    pub(crate) fn run<T: Cost>(&mut self, values: &[T], lo: i64, hi: i64, mins: &mut [T], args: &mut [Index]) {
        let n = values.len();
        debug_assert!(lo <= hi);
        debug_assert!(n <= MAX_POSITIONS);
        debug_assert_eq!(mins.len(), n);
        debug_assert_eq!(args.len(), n);
        if n == 0 {
            return;
        }

        let span = (hi as i128 - lo as i128 + 1).min(n as i128) as usize;
        self.prefix.resize(n, NO_INDEX);
        self.suffix.resize(n, NO_INDEX);
        let (prefix, suffix) = (&mut self.prefix[..n], &mut self.suffix[..n]);
        let at = |i: Index| values[i as usize];

        for start in (0..n).step_by(span) {
            let end = (start + span).min(n);
            prefix[start] = start as Index;
            for p in start + 1..end {
                let prev = prefix[p - 1];
                // strict: earlier index wins ties
                prefix[p] = if values[p] < at(prev) { p as Index } else { prev };
            }
            suffix[end - 1] = (end - 1) as Index;
            for p in (start..end - 1).rev() {
                let next = suffix[p + 1];
                suffix[p] = if values[p] <= at(next) { p as Index } else { next };
            }
        }

        let last = n as i64 - 1;
        // start of the block holding the window's right end; that end
        // never moves left as j grows
        let mut block = 0;
        for j in 0..n {
            let from = (j as i64).saturating_sub(hi).max(0);
            let to = (j as i64).saturating_sub(lo).min(last);
            if from > to {
                mins[j] = T::INFINITY;
                args[j] = NO_INDEX;
                continue;
            }
            let (a, b) = (from as usize, to as usize);
            while block + span <= b {
                block += span;
            }
            let best = if a >= block {
                if a == block {
                    prefix[b]
                } else {
                    // A window strictly inside a block can only arise from
                    // clipping at the right end, so it runs to the block end.
                    suffix[a]
                }
            } else {
                let (left, right) = (suffix[a], prefix[b]);
                if at(left) <= at(right) {
                    left
                } else {
                    right
                }
            };
            mins[j] = at(best);
            args[j] = best;
        }
    }
}

/// Minimum of `values[j']` over `j' ∈ [j - hi, j - lo]` for every `j`.
///
/// Returns the minima and, for each position, the smallest index attaining
/// the minimum, or `None` where the clipped window is empty (the minimum is
/// then `INFINITY`).
///
/// # Panics
///
/// Panics if `lo > hi` or `values` is longer than [`MAX_POSITIONS`].
pub fn sliding_window_min<T: Cost>(values: &[T], lo: i64, hi: i64) -> (Vec<T>, Vec<Option<usize>>) {
    assert!(lo <= hi, "window offsets must satisfy lo <= hi (got {lo} > {hi})");
    let n = values.len();
    assert!(n <= MAX_POSITIONS, "{n} values exceed the position limit");
    let mut mins = vec![T::INFINITY; n];
    let mut args = vec![NO_INDEX; n];
    WindowMin::new().run(values, lo, hi, &mut mins, &mut args);
    let args = args
        .into_iter()
        .map(|a| (a != NO_INDEX).then_some(a as usize))
        .collect();
    (mins, args)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const INF: u64 = u64::MAX;

    fn naive(values: &[u64], lo: i64, hi: i64) -> (Vec<u64>, Vec<Option<usize>>) {
        let n = values.len() as i64;
        let mut mins = Vec::new();
        let mut args = Vec::new();
        for j in 0..n {
            let mut best: Option<(u64, usize)> = None;
            for p in (j - hi)..=(j - lo) {
                if p < 0 || p >= n {
                    continue;
                }
                let v = values[p as usize];
                if best.is_none_or(|(b, _)| v < b) {
                    best = Some((v, p as usize));
                }
            }
            mins.push(best.map_or(INF, |b| b.0));
            args.push(best.map(|b| b.1));
        }
        (mins, args)
    }

    #[test]
    fn worked_example() {
        let (mins, args) = sliding_window_min(&[5u64, 1, 3, 9, 2], 1, 2);
        assert_eq!(mins, vec![INF, 5, 1, 1, 3]);
        assert_eq!(args, vec![None, Some(0), Some(1), Some(1), Some(2)]);
    }

    #[test]
    fn identity_window() {
        let v = [4u64, 8, 1, 1, 0, 7];
        let (mins, args) = sliding_window_min(&v, 0, 0);
        assert_eq!(mins, v.to_vec());
        assert_eq!(args, (0..6).map(Some).collect::<Vec<_>>());
    }

    #[test]
    fn constant_input_prefers_leftmost() {
        let (mins, args) = sliding_window_min(&[7u64, 7, 7], 1, 1);
        assert_eq!(mins, vec![INF, 7, 7]);
        assert_eq!(args, vec![None, Some(0), Some(1)]);

        let (_, args) = sliding_window_min(&[7u64, 7, 7, 7], -3, 3);
        assert_eq!(args, vec![Some(0); 4]);
    }

    #[test]
    fn window_wider_than_input() {
        let v = [3u64, 2, 9, 2];
        assert_eq!(sliding_window_min(&v, -10, 10), naive(&v, -10, 10));
        assert_eq!(sliding_window_min(&v, 10, 20), naive(&v, 10, 20));
        assert_eq!(sliding_window_min(&v, -20, -10), naive(&v, -20, -10));
    }

    #[test]
    fn extreme_offsets_do_not_overflow() {
        let v = [1u64, 2];
        let (mins, _) = sliding_window_min(&v, i64::MIN, i64::MAX);
        assert_eq!(mins, vec![1, 1]);
    }

    #[test]
    fn all_infinite_window_still_reports_index() {
        let (mins, args) = sliding_window_min(&[INF, INF, 4], 0, 1);
        assert_eq!(mins, vec![INF, INF, 4]);
        assert_eq!(args, vec![Some(0), Some(0), Some(2)]);
    }

    fn values_strategy() -> impl Strategy<Value = Vec<u64>> {
        prop::collection::vec(
            prop_oneof![9 => 0u64..50, 1 => Just(INF)],
            1..200,
        )
    }

    proptest! {
        #[test]
        fn matches_naive_scan(values in values_strategy(), a in -220i64..220, b in -220i64..220) {
            let (lo, hi) = (a.min(b), a.max(b));
            prop_assert_eq!(sliding_window_min(&values, lo, hi), naive(&values, lo, hi));
        }
    }
}
