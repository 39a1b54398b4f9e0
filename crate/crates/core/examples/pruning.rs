//! Sign analysis removes places that can never carry a token, and every
//! transition that needs one.

use ffreach::instance::{parse_instance, serialize_instance};
use ffreach::prune::{prune_instance, PruneVerdict};

const NET: &str = "net pipeline
places: src mid out spare dead
init: src=2
transition forward
  consume src:1
  produce mid:1
transition finish
  consume mid:1
  produce out:1
transition revive
  consume dead:1
  produce spare:1 src:1
target: out=2 spare=0
";

fn main() {
    let inst = parse_instance(NET).unwrap();
    let pruned = prune_instance(&inst);
    let removed: Vec<&str> = pruned.removed_places().map(|p| inst.net.places()[p].as_str()).collect();
    println!("removed places: {}", removed.join(", "));
    println!("kept transitions: {:?}", pruned.kept_transitions);
    assert_eq!(pruned.verdict, PruneVerdict::Pruned);
    print!("{}", serialize_instance(&pruned.instance));
}
