use std::io::Write;

use cohbench_core::detection::{chsh_canonical, chsh_max_search_with, ChshConfig, ChshResult, SearchSpace};

use crate::args::{ChshArgs, ChshMode};
use crate::bench::{apply_overrides, load_bench};
use crate::error::CliResult;
use crate::output::{fmt_f64, OutputDir, RunManifest};

pub const HEADER: [&str; 7] = ["quantity", "a_deg", "b_deg", "a_rad", "b_rad", "value", "gated"];

/// Four correlator rows and one `S` row; `S` leaves the angle columns empty.
pub fn rows(r: &ChshResult) -> Vec<Vec<String>> {
    let settings = [
        ("E(a,b)", r.a, r.b),
        ("E(a,b')", r.a, r.b_prime),
        ("E(a',b)", r.a_prime, r.b),
        ("E(a',b')", r.a_prime, r.b_prime),
    ];
    let gated = r.gated.to_string();
    let mut out: Vec<Vec<String>> = settings
        .iter()
        .zip(r.e_values)
        .map(|(&(q, a, b), e)| {
            vec![
                q.into(),
                fmt_f64(a.to_degrees()),
                fmt_f64(b.to_degrees()),
                fmt_f64(a),
                fmt_f64(b),
                fmt_f64(e),
                gated.clone(),
            ]
        })
        .collect();
    out.push(vec!["S".into(), String::new(), String::new(), String::new(), String::new(), fmt_f64(r.s), gated]);
    out
}

pub fn run(args: &ChshArgs, stdout: &mut dyn Write) -> CliResult<u8> {
    let bench = load_bench(&args.bench.bench)?;
    let graph = apply_overrides(&bench.graph, &args.bench.set)?;
    let cfg = if args.ungated { ChshConfig::ungated() } else { ChshConfig::default() };
    let (mode, result) = match args.mode {
        ChshMode::Canonical => ("canonical", chsh_canonical(&graph, &cfg)?),
        ChshMode::Search => ("search", chsh_max_search_with(&graph, &cfg, SearchSpace::Full)?),
    };

    let manifest = RunManifest::new("chsh")
        .with_bench(&bench.source, &graph)
        .option("mode", mode)
        .option("gated", cfg.gated)
        .option("pair", format!("{},{}", cfg.det_a, cfg.det_b));
    let out = OutputDir::create(&args.out.out, manifest)?;
    let path = out.write_csv("chsh.csv", &HEADER, &rows(&result))?;
    out.write_manifest()?;

    let d = f64::to_degrees;
    writeln!(
        stdout,
        "{mode}: a = {} deg, a' = {} deg, b = {} deg, b' = {} deg",
        d(result.a),
        d(result.a_prime),
        d(result.b),
        d(result.b_prime)
    )?;
    for (q, e) in ["E(a,b)  ", "E(a,b') ", "E(a',b) ", "E(a',b')"].iter().zip(result.e_values) {
        writeln!(stdout, "  {q} = {e:+.12}")?;
    }
    let flag = if result.gated { "" } else { "  [ungated: includes the ±2Δf product terms]" };
    writeln!(stdout, "S = {:.12}{flag}", result.s)?;
    writeln!(stdout, "wrote {}", path.display())?;
    Ok(0)
}
