use std::path::Path;
use std::time::{Duration, Instant};

use anyhow::Context;
use serde::de::DeserializeOwned;
use serde::Serialize;

use squeezebox::imaging::{read_pgm_file, write_pgm_file, GrayImage};
use squeezebox::plate::{segment_plate, PlateError, PlateTemplate};
use squeezebox::viz::{segment_viz, VizError, VizOptions, VizTemplate};
use squeezebox::Rect;

use crate::layout::{draw_boxes, LayoutJson};
use crate::{Outputs, Status};

#[derive(Serialize)]
struct StageTime {
    stage: &'static str,
    ms: f64,
}

#[derive(Serialize)]
struct RunReport<'a, T: Serialize> {
    input: String,
    template: String,
    timings: Vec<StageTime>,
    #[serde(flatten)]
    result: &'a T,
}

#[derive(Serialize)]
struct PlateJson<'a> {
    boxes: &'a [Rect],
    objective: u64,
    iterations: usize,
    converged: bool,
    trace: &'a [u64],
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
}

fn read_image(path: &Path) -> anyhow::Result<GrayImage> {
    read_pgm_file(path).with_context(|| format!("reading {}", path.display()))
}

fn finish<T: Serialize>(
    image: &Path,
    template: &Path,
    img: &GrayImage,
    boxes: &[Rect],
    result: &T,
    timings: Vec<StageTime>,
    out: &Outputs,
) -> anyhow::Result<Status> {
    println!("{}", serde_json::to_string(result)?);
    if let Some(path) = &out.overlay {
        write_pgm_file(path, &draw_boxes(img, boxes)).with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &out.report {
        let report = RunReport {
            input: image.display().to_string(),
            template: template.display().to_string(),
            timings,
            result,
        };
        write_json(path, &report)?;
    }
    Ok(Status::Done)
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

pub fn viz(image: &Path, template: &Path, max_iters: usize, refine: bool, out: &Outputs) -> anyhow::Result<Status> {
    let start = Instant::now();
    let img = read_image(image)?;
    let tpl: VizTemplate = read_json(template)?;
    let load = start.elapsed();

    let opts = VizOptions {
        max_iters,
        refine,
        ..VizOptions::default()
    };
    let outcome = match segment_viz(&img, &tpl, &opts) {
        Ok(o) => o,
        Err(
            e @ (VizError::Infeasible | VizError::HeightRangeInfeasible { .. } | VizError::WidthRangeInfeasible { .. }),
        ) => {
            eprintln!("infeasible: {e}");
            return Ok(Status::Infeasible);
        }
        Err(e) => return Err(e).context("segmenting"),
    };

    let mut layout = LayoutJson::from_layout(&tpl, &outcome.layout);
    layout.objective_s1 = Some(outcome.stats.s1);
    layout.objective_v = Some(outcome.dispersion);
    layout.iterations = Some(outcome.iterations);

    let mut timings = vec![StageTime { stage: "load", ms: ms(load) }];
    timings.extend(outcome.timings.0.iter().map(|&(stage, d)| StageTime { stage, ms: ms(d) }));
    let boxes = outcome.layout.field_rects();
    finish(image, template, &img, &boxes, &layout, timings, out)
}

pub fn plate(image: &Path, template: &Path, max_iters: usize, out: &Outputs) -> anyhow::Result<Status> {
    let start = Instant::now();
    let img = read_image(image)?;
    let tpl: PlateTemplate = read_json(template)?;
    let load = start.elapsed();

    let start = Instant::now();
    let outcome = match segment_plate(&img, &tpl, max_iters) {
        Ok(o) => o,
        Err(e @ PlateError::Infeasible(_)) => {
            eprintln!("infeasible: {e}");
            return Ok(Status::Infeasible);
        }
        Err(e) => return Err(e).context("segmenting"),
    };
    let segment = start.elapsed();

    let result = PlateJson {
        boxes: &outcome.result.boxes,
        objective: outcome.result.objective,
        iterations: outcome.iterations,
        converged: outcome.converged,
        trace: &outcome.trace,
    };
    let timings = vec![
        StageTime { stage: "load", ms: ms(load) },
        StageTime {
            stage: "segment",
            ms: ms(segment),
        },
    ];
    finish(image, template, &img, &outcome.result.boxes, &result, timings, out)
}
