//! Prints the built-in bench as `.obd` text.

use cohbench_core::dsl::serialize;
use cohbench_core::optics::build_fig1;
use cohbench_core::BenchParams;

fn main() {
    print!("{}", serialize(&build_fig1(&BenchParams::default())).text);
}
