//! Command-line front end: `simulate`, `sweep`, `chsh` and `validate`.
//!
//! Exit codes: 0 success, 1 validation-suite failure, 2 usage or input error.
//! Output files go to `--out`, or `$COHBENCH_OUT`, or the working directory.

pub mod args;
pub mod bench;
pub mod commands;
pub mod error;
pub mod output;

use std::io::Write;

pub use args::{Cli, Command};
pub use error::{CliError, CliResult};

/// Runs one parsed command and returns its exit code. Errors go to `stderr`.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8 {
    let result = match &cli.command {
        Command::Simulate(a) => commands::simulate::run(a, stdout),
        Command::Sweep(a) => commands::sweep::run(a, stdout),
        Command::Chsh(a) => commands::chsh::run(a, stdout),
        Command::Validate(a) => commands::validate::run(a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.code
        }
    }
}
