use std::fmt;
use std::path::Path;

use anyhow::Context;
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use squeezebox::dsp::{self, CostMatrix, DistanceBounds};

use crate::Status;

/// A cost entry: any non-negative number, or the string `"inf"`.
struct Cost(f64);

impl<'de> Deserialize<'de> for Cost {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct CostVisitor;

        impl Visitor<'_> for CostVisitor {
            type Value = Cost;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a non-negative number or \"inf\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Cost, E> {
                Ok(Cost(v as f64))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Cost, E> {
                Ok(Cost(v as f64))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Cost, E> {
                Ok(Cost(v))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Cost, E> {
                if v == "inf" {
                    Ok(Cost(f64::INFINITY))
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }
        }

        d.deserialize_any(CostVisitor)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Problem {
    costs: Vec<Vec<Cost>>,
    t_min: Vec<i64>,
    t_max: Vec<i64>,
}

#[derive(Serialize)]
struct Output {
    locations: Vec<usize>,
    objective: Value,
}

/// Whole numbers print without a fraction, infinity as `"inf"`.
fn number(v: f64) -> Value {
    if v.is_infinite() {
        Value::from("inf")
    } else if v.fract() == 0.0 && v < 2f64.powi(53) {
        Value::from(v as u64)
    } else {
        Value::from(v)
    }
}

fn parse(text: &str) -> anyhow::Result<(CostMatrix<f64>, DistanceBounds)> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let problem: Problem = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        anyhow::anyhow!("{path}: {}", e.into_inner())
    })?;
    let rows = problem
        .costs
        .into_iter()
        .map(|r| r.into_iter().map(|c| c.0).collect())
        .collect();
    let costs = CostMatrix::from_rows(rows).context("costs")?;
    let bounds = DistanceBounds::new(problem.t_min, problem.t_max).context("t_min/t_max")?;
    Ok((costs, bounds))
}

pub fn run(path: &Path) -> anyhow::Result<Status> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let (costs, bounds) = parse(&text).with_context(|| format!("invalid problem {}", path.display()))?;
    let sol = dsp::solve(&costs, &bounds).with_context(|| format!("invalid problem {}", path.display()))?;
    let out = Output {
        objective: number(sol.objective),
        locations: sol.locations,
    };
    println!("{}", serde_json::to_string(&out)?);
    Ok(if sol.objective.is_infinite() {
        Status::Infeasible
    } else {
        Status::Done
    })
}
