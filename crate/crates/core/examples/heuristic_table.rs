//! Compares the four heuristics on a few markings of the example net.

use ffreach::heuristics::{self, HeuristicKind};
use ffreach::instance::parse_instance;
use ffreach::ratlp::DEFAULT_NODE_BUDGET;
use ffreach::Marking;

fn main() {
    let inst = parse_instance(include_str!("../instances/counter.fnet")).unwrap();
    let kinds = [HeuristicKind::Q, HeuristicKind::Z, HeuristicKind::Struct, HeuristicKind::Zero];
    let hs: Vec<_> = kinds
        .iter()
        .map(|&k| heuristics::build(k, &inst.net, &inst.target, DEFAULT_NODE_BUDGET))
        .collect();

    println!("{:<10}{:>8}{:>8}{:>8}{:>8}", "marking", "q", "z", "struct", "zero");
    for m in [[0, 0], [1, 0], [2, 0], [1, 1], [3, 0], [2, 1], [0, 1], [1, 2]] {
        let m = Marking(m.to_vec());
        print!("{:<10}", m.to_string());
        for h in &hs {
            print!("{:>8}", h.evaluate(&m).to_string());
        }
        println!();
    }
}
