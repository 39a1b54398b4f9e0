//! A* with the rational state-equation heuristic on the three-transition
//! example net. Prints every expanded marking and the shortest witness.

use ffreach::heuristics::{self, HeuristicKind};
use ffreach::instance::parse_instance;
use ffreach::ratlp::DEFAULT_NODE_BUDGET;
use ffreach::search::{directed_search, SearchLimits, Strategy, Verdict};

fn main() {
    let inst = parse_instance(include_str!("../instances/counter.fnet")).expect("bundled instance parses");
    let h = heuristics::build(HeuristicKind::Q, &inst.net, &inst.target, DEFAULT_NODE_BUDGET);
    let limits = SearchLimits { record_trace: true, ..SearchLimits::default() };
    let result = directed_search(&inst, Strategy::AStar, h.as_ref(), &limits);

    for (i, m) in result.trace.iter().enumerate() {
        println!("expansion {}: {m}  h = {}", i + 1, h.evaluate(m));
    }
    match result.verdict {
        Verdict::Reachable { distance, witness } => {
            let ids: Vec<&str> = witness.sequence.iter().map(|&t| inst.net.transitions()[t].id.as_str()).collect();
            println!("distance {distance} via {}", ids.join(" "));
        }
        other => println!("{other:?}"),
    }
}
