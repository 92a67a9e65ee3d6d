use std::io::Write;

use rayon::prelude::*;

use cohbench_core::detection::{
    fringe_visibility, joint_rates, phi_grid, phi_scan, DetectionPipeline, PipelineRegistry, DEFAULT_PHI_POINTS,
};
use cohbench_core::optics::propagate;
use cohbench_core::BenchGraph;

use crate::args::{Metric, SweepArgs};
use crate::bench::{
    apply, apply_overrides, is_angle, is_known, known_names, load_bench, parse_assignment, parse_number,
};
use crate::error::{CliError, CliResult};
use crate::output::{fmt_f64, OutputDir, RunManifest};

pub const MAX_AXES: usize = 2;

/// One `--vary` axis, values in interface units.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub name: String,
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl SweepSpec {
    /// Parses `name=start:stop:step`. Requires `step > 0`, `start ≤ stop`
    /// and at least two points.
    pub fn parse(s: &str) -> CliResult<SweepSpec> {
        let (name, range) = parse_assignment(s)?;
        let parts: Vec<&str> = range.split(':').collect();
        let [start, stop, step] = parts[..] else {
            return Err(CliError::usage(format!("--vary {name}: expected START:STOP:STEP, got `{range}`")));
        };
        let what = format!("--vary {name}");
        let spec = SweepSpec {
            start: parse_number(start, &what)?,
            stop: parse_number(stop, &what)?,
            step: parse_number(step, &what)?,
            name,
        };
        if spec.step <= 0.0 {
            return Err(CliError::usage(format!("{what}: step must be > 0")));
        }
        if spec.start > spec.stop {
            return Err(CliError::usage(format!("{what}: start must not exceed stop")));
        }
        if spec.len() < 2 {
            return Err(CliError::usage(format!("{what}: grid has fewer than 2 points")));
        }
        Ok(spec)
    }

    /// Points `start + k·step` up to `stop`, with a relative slack of 1e-9
    /// steps so that a stop on the grid is included.
    pub fn len(&self) -> usize {
        ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.len()).map(|k| self.start + k as f64 * self.step).collect()
    }
}

struct Evaluator<'a> {
    metric: Metric,
    pipeline: &'a dyn DetectionPipeline,
    pair: (String, String),
    detector: String,
}

impl Evaluator<'_> {
    fn eval(&self, g: &BenchGraph) -> CliResult<f64> {
        let mean = |d: &str| -> CliResult<f64> { Ok(self.pipeline.mean(&propagate(g)?, d)?) };
        Ok(match self.metric {
            Metric::IS1 => mean("s1")?,
            Metric::IS2 => mean("s2")?,
            Metric::II3 => mean("i3")?,
            Metric::II4 => mean("i4")?,
            Metric::RGated => joint_rates(g, &self.pair.0, &self.pair.1, self.pipeline)?.gated,
            Metric::RUngated => joint_rates(g, &self.pair.0, &self.pair.1, self.pipeline)?.ungated,
            Metric::Visibility => {
                fringe_visibility(&phi_scan(g, &self.detector, &phi_grid(DEFAULT_PHI_POINTS), self.pipeline)?)
            }
        })
    }
}

fn parse_pair(s: &str) -> CliResult<(String, String)> {
    match s.split_once(',') {
        Some((a, b)) if !a.trim().is_empty() && !b.trim().is_empty() => Ok((a.trim().into(), b.trim().into())),
        _ => Err(CliError::usage(format!("--pair: expected A,B, got `{s}`"))),
    }
}

/// Column layout: `param_value,metric_value`, then the second axis (named
/// after its parameter), then radian copies of angle axes.
pub fn header(axes: &[SweepSpec]) -> Vec<String> {
    let mut h = vec!["param_value".to_string(), "metric_value".to_string()];
    if let Some(second) = axes.get(1) {
        h.push(second.name.clone());
    }
    if is_angle(&axes[0].name) {
        h.push("param_value_rad".into());
    }
    if let Some(second) = axes.get(1).filter(|a| is_angle(&a.name)) {
        h.push(format!("{}_rad", second.name));
    }
    h
}

/// Evaluates the grid in parallel and writes `sweep.csv` ordered by grid
/// index, first axis outermost.
pub fn run(args: &SweepArgs, stdout: &mut dyn Write) -> CliResult<u8> {
    if args.vary.len() > MAX_AXES {
        return Err(CliError::usage(format!("at most {MAX_AXES} --vary axes, got {}", args.vary.len())));
    }
    let bench = load_bench(&args.bench.bench)?;
    let graph = apply_overrides(&bench.graph, &args.bench.set)?;
    let axes: Vec<SweepSpec> = args.vary.iter().map(|s| SweepSpec::parse(s)).collect::<CliResult<_>>()?;
    for a in &axes {
        if !is_known(&graph, &a.name) {
            return Err(CliError::usage(format!(
                "unknown parameter `{}` (known: {})",
                a.name,
                known_names(&graph).join(", ")
            )));
        }
    }
    if axes.len() == 2 && axes[0].name == axes[1].name {
        return Err(CliError::usage(format!("--vary {} given twice", axes[0].name)));
    }
    let pipeline = PipelineRegistry::standard().get(&args.pipeline)?;
    let evaluator = Evaluator {
        metric: args.metric,
        pipeline: pipeline.as_ref(),
        pair: parse_pair(&args.pair)?,
        detector: args.detector.clone(),
    };

    let first = axes[0].values();
    let second = axes.get(1).map(SweepSpec::values);
    let points: Vec<(f64, Option<f64>)> = match &second {
        None => first.iter().map(|&v| (v, None)).collect(),
        Some(s) => first.iter().flat_map(|&v| s.iter().map(move |&w| (v, Some(w)))).collect(),
    };
    let values: Vec<f64> = points
        .par_iter()
        .map(|&(v, w)| {
            let mut set = vec![(axes[0].name.clone(), v)];
            if let (Some(w), Some(ax)) = (w, axes.get(1)) {
                set.push((ax.name.clone(), w));
            }
            evaluator.eval(&apply(&graph, &set)?)
        })
        .collect::<CliResult<_>>()?;

    let rows: Vec<Vec<String>> = points
        .iter()
        .zip(&values)
        .map(|(&(v, w), &m)| {
            let mut row = vec![fmt_f64(v), fmt_f64(m)];
            row.extend(w.map(fmt_f64));
            if is_angle(&axes[0].name) {
                row.push(fmt_f64(v.to_radians()));
            }
            if let (Some(w), true) = (w, axes.get(1).is_some_and(|a| is_angle(&a.name))) {
                row.push(fmt_f64(w.to_radians()));
            }
            row
        })
        .collect();

    let mut manifest = RunManifest::new("sweep")
        .with_bench(&bench.source, &graph)
        .option("metric", args.metric.name())
        .option("pipeline", &args.pipeline);
    for (i, a) in axes.iter().enumerate() {
        manifest = manifest.option(&format!("vary{i}"), format!("{}={}:{}:{}", a.name, a.start, a.stop, a.step));
    }
    match args.metric {
        Metric::RGated | Metric::RUngated => {
            manifest = manifest.option("pair", format!("{},{}", evaluator.pair.0, evaluator.pair.1))
        }
        Metric::Visibility => manifest = manifest.option("detector", &args.detector),
        _ => {}
    }
    let out = OutputDir::create(&args.out.out, manifest)?;
    let h = header(&axes);
    let path = out.write_csv("sweep.csv", &h.iter().map(String::as_str).collect::<Vec<_>>(), &rows)?;
    out.write_manifest()?;

    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let names: Vec<&str> = axes.iter().map(|a| a.name.as_str()).collect();
    writeln!(stdout, "{} over {} ({} points): min {lo}, max {hi}", args.metric.name(), names.join(" x "), rows.len())?;
    writeln!(stdout, "wrote {}", path.display())?;
    Ok(0)
}
