//! Solves an instance file and prints the JSON report.
//!
//!     cargo run --example solve_file -- crates/core/instances/weighted.fnet

use ffreach::instance::parse_instance;
use ffreach::report::{solve, SolveConfig, SolveReport};

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/instances/weighted.fnet").to_string());
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    let inst = parse_instance(&text).unwrap_or_else(|e| panic!("{path}: {e}"));
    let cfg = SolveConfig::default();
    println!("{}", SolveReport::new(&solve(&inst, &cfg), &cfg, false).to_json());
}
