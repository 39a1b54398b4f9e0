//! Coverability from an upward-closed set of initial markings. The solver
//! adds a generator transition per `>=` place and reports how many of the
//! witness steps are generator firings.

use ffreach::instance::parse_instance;
use ffreach::report::{solve, SolveConfig, SolveReport};

fn main() {
    let inst = parse_instance(include_str!("../instances/mutex.fnet")).unwrap();
    let cfg = SolveConfig::default();
    print!("{}", SolveReport::new(&solve(&inst, &cfg), &cfg, false).to_text());

    // Two clients waiting for the same resource, any number of tokens at the start.
    let jobs = parse_instance(
        "net jobs\nplaces: ready busy done\ninit: ready>=1\n\
         transition take\n  consume ready:2\n  produce busy:1\n\
         transition finish\n  consume busy:1\n  produce done:1\ntarget: done>=2\n",
    )
    .unwrap();
    let sol = solve(&jobs, &cfg);
    println!();
    print!("{}", SolveReport::new(&sol, &cfg, false).to_text());
}
