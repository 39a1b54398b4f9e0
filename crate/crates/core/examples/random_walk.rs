//! Builds reachable-by-construction instances from seeded random walks and
//! compares what each strategy finds on them.

use ffreach::app::walk_instance;
use ffreach::heuristics::HeuristicKind;
use ffreach::instance::parse_instance;
use ffreach::report::{solve, SolveConfig};
use ffreach::search::Strategy;

fn main() {
    let base = parse_instance(include_str!("../instances/struct.fnet")).unwrap();
    for seed in 0..5 {
        let inst = parse_instance(&walk_instance(&base, 15, seed, None)).unwrap();
        print!("seed {seed} target {}:", inst.target.constraints.iter().map(|c| c.bound.to_string()).collect::<Vec<_>>().join(","));
        for (strategy, kind) in [
            (Strategy::Dijkstra, HeuristicKind::Zero),
            (Strategy::AStar, HeuristicKind::Q),
            (Strategy::Gbfs, HeuristicKind::Q),
            (Strategy::Gbfs, HeuristicKind::Struct),
        ] {
            let cfg = SolveConfig { strategy, heuristic: kind, ..SolveConfig::default() };
            let sol = solve(&inst, &cfg);
            let d = sol.verdict.distance().map_or("-".to_string(), |d| d.to_string());
            print!("  {strategy}+{kind}={d} ({} exp)", sol.stats.expanded);
        }
        println!();
    }
}
