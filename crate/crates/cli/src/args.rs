use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "cohbench", version, about = "Simulate polarization-path correlated interferometer benches")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Detector means, fringe visibilities and per-term field tables.
    Simulate(SimulateArgs),
    /// One metric over a 1-D or 2-D parameter grid.
    Sweep(SweepArgs),
    /// CHSH statistic from gated (or ungated) joint rates.
    Chsh(ChshArgs),
    /// Randomized cross-checks of both detection pipelines.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Bench file, or `builtin:fig1`.
    #[arg(long, default_value = "builtin:fig1")]
    pub bench: String,
    /// Parameter override `name=value`; angles in degrees. Repeatable.
    #[arg(long = "set", value_name = "NAME=VALUE")]
    pub set: Vec<String>,
}

#[derive(Debug, Clone, Args)]
pub struct OutArgs {
    /// Output directory.
    #[arg(long, env = "COHBENCH_OUT", default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub bench: BenchArgs,
    #[command(flatten)]
    pub out: OutArgs,
    /// Detection pipeline.
    #[arg(long, default_value = "analytic")]
    pub pipeline: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Metric {
    #[value(name = "I_s1")]
    IS1,
    #[value(name = "I_s2")]
    IS2,
    #[value(name = "I_i3")]
    II3,
    #[value(name = "I_i4")]
    II4,
    #[value(name = "R_gated")]
    RGated,
    #[value(name = "R_ungated")]
    RUngated,
    #[value(name = "visibility")]
    Visibility,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::IS1 => "I_s1",
            Metric::IS2 => "I_s2",
            Metric::II3 => "I_i3",
            Metric::II4 => "I_i4",
            Metric::RGated => "R_gated",
            Metric::RUngated => "R_ungated",
            Metric::Visibility => "visibility",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub bench: BenchArgs,
    #[command(flatten)]
    pub out: OutArgs,
    /// Grid `name=start:stop:step`; angles (and `phi`) in degrees. At most two.
    #[arg(long = "vary", value_name = "NAME=START:STOP:STEP", required = true)]
    pub vary: Vec<String>,
    #[arg(long, value_enum)]
    pub metric: Metric,
    /// Detector pair for R_gated and R_ungated.
    #[arg(long, default_value = "s1,i3")]
    pub pair: String,
    /// Detector for the visibility metric.
    #[arg(long, default_value = "s1")]
    pub detector: String,
    #[arg(long, default_value = "analytic")]
    pub pipeline: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChshMode {
    Canonical,
    Search,
}

#[derive(Debug, Clone, Args)]
pub struct ChshArgs {
    #[command(flatten)]
    pub bench: BenchArgs,
    #[command(flatten)]
    pub out: OutArgs,
    #[arg(long, value_enum, default_value = "canonical")]
    pub mode: ChshMode,
    /// Correlate raw products instead of the zero-offset component.
    #[arg(long)]
    pub ungated: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub out: OutArgs,
    /// Random parameter draws.
    #[arg(long, default_value_t = 100)]
    pub draws: usize,
    #[arg(long, default_value_t = cohbench_core::validation::SuiteConfig::default().seed)]
    pub seed: u64,
}
