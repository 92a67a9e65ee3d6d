use std::io::Write;

use cohbench_core::detection::{fringe_visibility, phi_grid, phi_scan, PipelineRegistry, DEFAULT_PHI_POINTS};
use cohbench_core::optics::report::CSV_HEADER;
use cohbench_core::optics::{field_report_from, propagate};

use crate::args::SimulateArgs;
use crate::bench::{apply_overrides, load_bench};
use crate::error::CliResult;
use crate::output::{fmt_f64, OutputDir, RunManifest};

pub const DETECTORS_HEADER: [&str; 3] = ["detector", "mean_intensity", "visibility_context"];

/// Writes `detectors.csv`, `fields.csv` and `manifest.json`.
///
/// `visibility_context` is the fringe visibility of the detector over a
/// full φ scan at the other parameters' values.
pub fn run(args: &SimulateArgs, stdout: &mut dyn Write) -> CliResult<u8> {
    let bench = load_bench(&args.bench.bench)?;
    let graph = apply_overrides(&bench.graph, &args.bench.set)?;
    let pipeline = PipelineRegistry::standard().get(&args.pipeline)?;
    let prop = propagate(&graph)?;

    let grid = phi_grid(DEFAULT_PHI_POINTS);
    let mut rows = Vec::new();
    let mut fields = Vec::new();
    for name in graph.detectors.keys() {
        let mean = pipeline.mean(&prop, name)?;
        let vis = fringe_visibility(&phi_scan(&graph, name, &grid, pipeline.as_ref())?);
        rows.push((name.clone(), mean, vis));
        fields.extend(field_report_from(&prop, name)?.csv_rows());
    }

    let manifest = RunManifest::new("simulate").with_bench(&bench.source, &graph).option("pipeline", &args.pipeline);
    let out = OutputDir::create(&args.out.out, manifest)?;
    let csv_rows: Vec<Vec<String>> = rows.iter().map(|(n, m, v)| vec![n.clone(), fmt_f64(*m), fmt_f64(*v)]).collect();
    let det_path = out.write_csv("detectors.csv", &DETECTORS_HEADER, &csv_rows)?;
    let field_path = out.write_csv("fields.csv", &CSV_HEADER, &fields)?;
    out.write_manifest()?;

    let p = graph.bench_params();
    writeln!(stdout, "bench {} ({})", graph.name, bench.source)?;
    writeln!(stdout, "I0 = {}  phi = {} deg  pipeline = {}", p.i0(), p.phi().to_degrees(), pipeline.kind())?;
    writeln!(stdout, "{:<10} {:>22} {:>12}", "detector", "mean_intensity", "visibility")?;
    for (n, m, v) in &rows {
        writeln!(stdout, "{n:<10} {m:>22.15} {v:>12.6}")?;
    }
    writeln!(stdout, "wrote {} and {}", det_path.display(), field_path.display())?;
    Ok(0)
}
