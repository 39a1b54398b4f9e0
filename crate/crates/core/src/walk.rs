//! Seeded random walks, used to generate instances with reachable targets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::net::{Marking, PetriNet};

/// Fires `length` uniformly chosen firable transitions from `init`.
///
/// Stops early at a dead marking (or if a firing would overflow). The same
/// arguments always yield the same walk.
pub fn random_walk(net: &PetriNet, init: &Marking, length: usize, seed: u64) -> (Marking, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = init.clone();
    let mut walk = Vec::with_capacity(length);
    for _ in 0..length {
        let firable: Vec<usize> = (0..net.num_transitions())
            .filter(|&t| net.is_firable(&m, t).unwrap_or(false))
            .collect();
        if firable.is_empty() {
            break;
        }
        let t = firable[rng.gen_range(0..firable.len())];
        match net.fire(&m, t) {
            Ok(next) => m = next,
            Err(_) => break,
        }
        walk.push(t);
    }
    (m, walk)
}
