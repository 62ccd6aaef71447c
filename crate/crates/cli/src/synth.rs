use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::Args;

use squeezebox::imaging::write_pgm_file;
use squeezebox::plate::PlateTemplate;
use squeezebox::testkit::{gen_plate, gen_viz, SynthSpec};
use squeezebox::viz::VizTemplate;

use crate::layout::LayoutJson;
use crate::segment::{read_json, write_json};
use crate::Status;

#[derive(Args)]
pub struct SynthArgs {
    /// Output image.
    #[arg(short, long)]
    out: PathBuf,
    /// Ground-truth JSON, by default next to the image with a .json extension.
    #[arg(long)]
    truth: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Standard deviation of the added Gaussian noise.
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    /// Largest deviation of any true size or position from the template.
    #[arg(long, default_value_t = 0)]
    jitter: usize,
    #[arg(long, default_value_t = 40)]
    glyph: u8,
    #[arg(long, default_value_t = 200)]
    background: u8,
}

impl SynthArgs {
    fn spec(&self) -> SynthSpec {
        SynthSpec {
            seed: self.seed,
            noise_sigma: self.noise,
            glyph_value: self.glyph,
            background_value: self.background,
            jitter: self.jitter,
        }
    }

    fn truth_path(&self, template: &Path) -> anyhow::Result<PathBuf> {
        let path = self.truth.clone().unwrap_or_else(|| self.out.with_extension("json"));
        if path == template {
            bail!("truth file {} would overwrite the template; pass --truth", path.display());
        }
        Ok(path)
    }
}

pub fn viz(template: &Path, width: usize, height: usize, args: &SynthArgs) -> anyhow::Result<Status> {
    let tpl: VizTemplate = read_json(template)?;
    let truth_path = args.truth_path(template)?;
    let (img, truth) = gen_viz(&tpl, width, height, &args.spec()).context("generating zone")?;
    write_pgm_file(&args.out, &img).with_context(|| format!("writing {}", args.out.display()))?;
    write_json(&truth_path, &LayoutJson::from_layout(&tpl, &truth))?;
    Ok(Status::Done)
}

pub fn plate(template: &Path, args: &SynthArgs) -> anyhow::Result<Status> {
    let tpl: PlateTemplate = read_json(template)?;
    let truth_path = args.truth_path(template)?;
    let (img, truth) = gen_plate(&tpl, &args.spec()).context("generating plate")?;
    write_pgm_file(&args.out, &img).with_context(|| format!("writing {}", args.out.display()))?;
    write_json(&truth_path, &truth)?;
    Ok(Status::Done)
}
