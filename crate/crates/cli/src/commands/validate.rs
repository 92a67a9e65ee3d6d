use std::io::Write;

use cohbench_core::validation::{run_suite_with, SuiteConfig};
use cohbench_core::ElementRegistry;

use crate::args::ValidateArgs;
use crate::error::{CliError, CliResult};
use crate::output::{fmt_f64, OutputDir, RunManifest};

pub const HEADER: [&str; 6] = ["check", "max_deviation", "tolerance", "samples", "passed", "worst_draw"];

pub fn run(args: &ValidateArgs, stdout: &mut dyn Write) -> CliResult<u8> {
    run_with(args, ElementRegistry::standard(), stdout)
}

/// Runs the suite against `registry`. Exit code 1 when any check fails.
pub fn run_with(args: &ValidateArgs, registry: &ElementRegistry, stdout: &mut dyn Write) -> CliResult<u8> {
    if args.draws == 0 {
        return Err(CliError::usage("--draws must be at least 1"));
    }
    let cfg = SuiteConfig { draws: args.draws, seed: args.seed, ..SuiteConfig::default() };
    let report = run_suite_with(&cfg, registry)?;

    let manifest = RunManifest::new("validate").option("draws", cfg.draws).option("seed", cfg.seed);
    let out = OutputDir::create(&args.out.out, manifest)?;
    let rows: Vec<Vec<String>> = report
        .checks
        .iter()
        .map(|c| {
            vec![
                c.name.clone(),
                fmt_f64(c.max_deviation),
                fmt_f64(c.tolerance),
                c.samples.to_string(),
                c.passed().to_string(),
                c.worst.as_ref().map(ToString::to_string).unwrap_or_default(),
            ]
        })
        .collect();
    let path = out.write_csv("validate.csv", &HEADER, &rows)?;
    out.write_manifest()?;

    write!(stdout, "{report}")?;
    let failed = report.failures().count();
    if failed == 0 {
        writeln!(stdout, "all {} checks passed ({} draws, seed {})", report.checks.len(), cfg.draws, cfg.seed)?;
    } else {
        writeln!(stdout, "{failed} of {} checks failed", report.checks.len())?;
    }
    writeln!(stdout, "wrote {}", path.display())?;
    Ok(report.exit_code() as u8)
}
