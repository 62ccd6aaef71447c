//! Timing of the placement solver against the direct scan.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::dsp::{solve, solve_dsp_naive};
use crate::testkit::banded_instance;

/// Wall-clock statistics of repeated runs, in milliseconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub runs: usize,
    pub mean_ms: f64,
    pub stddev_ms: f64,
    pub median_ms: f64,
    pub min_ms: f64,
}

impl Timing {
    fn from_samples(mut ms: Vec<f64>) -> Self {
        assert!(!ms.is_empty());
        let n = ms.len() as f64;
        let mean = ms.iter().sum::<f64>() / n;
        let var = ms.iter().map(|t| (t - mean).powi(2)).sum::<f64>() / n;
        ms.sort_by(f64::total_cmp);
        let mid = ms.len() / 2;
        let median = if ms.len() % 2 == 1 {
            ms[mid]
        } else {
            (ms[mid - 1] + ms[mid]) / 2.0
        };
        Self {
            runs: ms.len(),
            mean_ms: mean,
            stddev_ms: var.sqrt(),
            median_ms: median,
            min_ms: ms[0],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub parts: usize,
    pub positions: usize,
    pub window: usize,
    pub dsp: Timing,
    pub naive: Option<Timing>,
}

impl BenchRow {
    /// Mean naive time over mean solver time.
    pub fn speedup(&self) -> Option<f64> {
        self.naive.map(|n| n.mean_ms / self.dsp.mean_ms)
    }
}

fn time_runs(runs: usize, mut f: impl FnMut()) -> Timing {
    // one untimed run warms caches and the allocator
    f();
    let samples = (0..runs)
        .map(|_| {
            let start = Instant::now();
            f();
            start.elapsed().as_secs_f64() * 1e3
        })
        .collect();
    Timing::from_samples(samples)
}

/// Times both solvers on one seeded banded instance. `naive_runs == 0`
/// skips the direct scan. Panics if the two disagree.
pub fn bench_dsp(
    parts: usize,
    positions: usize,
    window: usize,
    dsp_runs: usize,
    naive_runs: usize,
    seed: u64,
) -> BenchRow {
    let (costs, bounds) = banded_instance(seed, parts, positions, window.max(1));
    let reference = solve(&costs, &bounds).expect("instance is well formed");
    let dsp = time_runs(dsp_runs.max(1), || {
        std::hint::black_box(solve(&costs, &bounds).expect("instance is well formed"));
    });
    let naive = (naive_runs > 0).then(|| {
        let sol = solve_dsp_naive(&costs, &bounds).expect("instance is well formed");
        assert_eq!(sol, reference, "solvers disagree");
        time_runs(naive_runs, || {
            std::hint::black_box(solve_dsp_naive(&costs, &bounds).expect("instance is well formed"));
        })
    });
    BenchRow {
        parts,
        positions,
        window,
        dsp,
        naive,
    }
}
