//! The structural abstraction: a weighted graph over places plus a sink,
//! with marking distances read off its shortest paths.

use ffreach::heuristics::{Heuristic, StructContext, Structural};
use ffreach::instance::parse_instance;
use ffreach::Marking;

fn main() {
    let inst = parse_instance(include_str!("../instances/struct.fnet")).unwrap();
    let ctx = StructContext::new(&inst.net);
    let name = |v: usize| if v == ctx.sink() { "sink".to_string() } else { inst.net.places()[v].clone() };

    for &(from, t, to) in ctx.edges() {
        println!("{} --{}--> {}", name(from), inst.net.transitions()[t].id, name(to));
    }
    for p in 0..=ctx.sink() {
        let row: Vec<String> = (0..=ctx.sink()).map(|q| ctx.distance(p, q).to_string()).collect();
        println!("{:>5}: {}", name(p), row.join(" "));
    }

    let h = Structural::new(ctx, &inst.target);
    println!("d_struct from {} = {}", inst.init, h.evaluate(&inst.init));
    println!("d_struct from {} = {}", Marking(vec![1, 0, 0]), h.evaluate(&Marking(vec![1, 0, 0])));
}
