//! `squeezebox` command-line front end.
//!
//! Exit status is 0 on success, 1 on I/O or format errors and 2 when the
//! problem has no feasible placement.

mod bench;
mod layout;
mod segment;
mod solve;
mod synth;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

/// Worker threads for the parallel stages; 0 or unset picks one per core.
const THREADS_VAR: &str = "SQUEEZEBOX_THREADS";

#[derive(Parser)]
#[command(name = "squeezebox", version, about = "Constrained sequence placement and its OCR segmenters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a placement problem given as JSON and print the solution.
    Solve { problem: PathBuf },
    /// Extract the text fields of an inspection zone.
    SegmentViz {
        image: PathBuf,
        template: PathBuf,
        /// Refinement sweeps.
        #[arg(long, default_value_t = 1)]
        max_iters: usize,
        /// Skip refinement, same as --max-iters 0.
        #[arg(long)]
        no_refine: bool,
        #[command(flatten)]
        out: Outputs,
    },
    /// Locate the symbols of a licence plate.
    SegmentPlate {
        image: PathBuf,
        template: PathBuf,
        #[arg(long, default_value_t = squeezebox::plate::DEFAULT_MAX_ITERS)]
        max_iters: usize,
        #[command(flatten)]
        out: Outputs,
    },
    /// Render a synthetic inspection zone and its true layout.
    SynthViz {
        template: PathBuf,
        #[arg(long)]
        width: usize,
        #[arg(long)]
        height: usize,
        #[command(flatten)]
        synth: synth::SynthArgs,
    },
    /// Render a synthetic plate and its true symbol boxes.
    SynthPlate {
        template: PathBuf,
        #[command(flatten)]
        synth: synth::SynthArgs,
    },
    /// Time the solver against the direct scan.
    Bench(bench::BenchArgs),
}

#[derive(Args)]
struct Outputs {
    /// Copy of the input with the found boxes outlined in black.
    #[arg(long)]
    overlay: Option<PathBuf>,
    /// Run report with stage timings.
    #[arg(long)]
    report: Option<PathBuf>,
}

/// How a command that did not hit an error ended.
enum Status {
    Done,
    Infeasible,
}

fn init_threads() -> anyhow::Result<()> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .with_context(|| format!("{THREADS_VAR} must be a thread count, got {value:?}"))?;
    if threads > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    init_threads()?;
    match cli.command {
        Command::Solve { problem } => solve::run(&problem),
        Command::SegmentViz {
            image,
            template,
            max_iters,
            no_refine,
            out,
        } => segment::viz(&image, &template, max_iters, !no_refine, &out),
        Command::SegmentPlate {
            image,
            template,
            max_iters,
            out,
        } => segment::plate(&image, &template, max_iters, &out),
        Command::SynthViz {
            template,
            width,
            height,
            synth,
        } => {
            if width == 0 || height == 0 {
                bail!("--width and --height must be positive");
            }
            synth::viz(&template, width, height, &synth)
        }
        Command::SynthPlate { template, synth } => synth::plate(&template, &synth),
        Command::Bench(args) => bench::run(&args),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Status::Done) => ExitCode::SUCCESS,
        Ok(Status::Infeasible) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
