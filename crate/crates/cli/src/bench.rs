use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Context};
use clap::Args;

use squeezebox::bench::{bench_dsp, BenchRow, Timing};

use crate::segment::write_json;
use crate::Status;

/// A problem size written `NxW`: parts by positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Size {
    parts: usize,
    positions: usize,
}

impl FromStr for Size {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        let (n, w) = s.split_once(['x', 'X']).context("size must look like NxW")?;
        let size = Size {
            parts: n.trim().parse().context("parts")?,
            positions: w.trim().parse().context("positions")?,
        };
        if size.parts == 0 || size.positions == 0 {
            bail!("size {s} must be positive");
        }
        Ok(size)
    }
}

#[derive(Args)]
pub struct BenchArgs {
    /// Problem sizes as NxW.
    #[arg(default_values = ["8x4096", "8x8192", "8x16384", "8x32768"])]
    sizes: Vec<Size>,
    /// The link window is the number of positions divided by this.
    #[arg(long, default_value_t = 8)]
    window_div: usize,
    /// Timed runs of each solver per size.
    #[arg(long, default_value_t = 10)]
    runs: usize,
    /// Time only the fast solver.
    #[arg(long)]
    no_naive: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the rows as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

fn cell(t: &Timing) -> String {
    format!("{:.3} ± {:.3}", t.mean_ms, t.stddev_ms)
}

pub fn run(args: &BenchArgs) -> anyhow::Result<Status> {
    if args.window_div == 0 || args.runs == 0 {
        bail!("--window-div and --runs must be positive");
    }
    let naive_runs = if args.no_naive { 0 } else { args.runs };
    println!(
        "{:>4} {:>9} {:>8} {:>20} {:>22} {:>9}",
        "N", "W", "window", "dsp ms", "naive ms", "speedup"
    );
    let mut rows: Vec<BenchRow> = Vec::new();
    for size in &args.sizes {
        let window = (size.positions / args.window_div).max(1);
        let row = bench_dsp(size.parts, size.positions, window, args.runs, naive_runs, args.seed);
        println!(
            "{:>4} {:>9} {:>8} {:>20} {:>22} {:>9}",
            row.parts,
            row.positions,
            row.window,
            cell(&row.dsp),
            row.naive.as_ref().map_or("-".into(), cell),
            row.speedup().map_or("-".into(), |s| format!("{s:.1}x")),
        );
        rows.push(row);
    }
    if let Some(path) = &args.json {
        write_json(path, &rows)?;
    }
    Ok(Status::Done)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_parse() {
        assert_eq!(
            "8x1024".parse::<Size>().unwrap(),
            Size {
                parts: 8,
                positions: 1024
            }
        );
        assert!("8".parse::<Size>().is_err());
        assert!("0x5".parse::<Size>().is_err());
    }
}
