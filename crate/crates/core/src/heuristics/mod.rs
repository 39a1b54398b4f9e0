//! Lower bounds on the remaining distance to a target set.
//!
//! Every heuristic here is derived from a distance under-approximation: a
//! function that never exceeds the true weighted distance and satisfies the
//! triangle inequality. Such heuristics are admissible and consistent, so A*
//! driven by them returns shortest witnesses, and a value of
//! [`Cost::Infinite`] proves that no target is reachable from the marking.

mod state_equation;
mod structural;

pub use state_equation::{build_state_equation, Domain, StateEquation};
pub use structural::{StructContext, Structural};

use std::fmt;

use crate::instance::TargetSpec;
use crate::net::{Marking, PetriNet};
use crate::Cost;

/// Estimated remaining distance from a marking to the target set.
///
/// Implementations must return a value no larger than the true distance,
/// and zero on markings that satisfy the target.
pub trait Heuristic: Send + Sync {
    fn evaluate(&self, m: &Marking) -> Cost;

    fn name(&self) -> &'static str;
}

/// The constant zero heuristic; turns A* into Dijkstra.
#[derive(Debug, Clone, Copy, Default)]
pub struct Zero;

impl Heuristic for Zero {
    fn evaluate(&self, _m: &Marking) -> Cost {
        Cost::zero()
    }

    fn name(&self) -> &'static str {
        "zero"
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum HeuristicKind {
    /// State equation over the nonnegative rationals.
    Q,
    /// State equation over the naturals.
    Z,
    /// Structural abstraction.
    Struct,
    Zero,
}

impl fmt::Display for HeuristicKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HeuristicKind::Q => "q",
            HeuristicKind::Z => "z",
            HeuristicKind::Struct => "struct",
            HeuristicKind::Zero => "zero",
        })
    }
}

/// Builds the heuristic of the given kind for `net` and `target`.
pub fn build(
    kind: HeuristicKind,
    net: &PetriNet,
    target: &TargetSpec,
    ilp_node_budget: usize,
) -> Box<dyn Heuristic> {
    match kind {
        HeuristicKind::Q => Box::new(StateEquation::new(net, target, Domain::Rationals, ilp_node_budget)),
        HeuristicKind::Z => Box::new(StateEquation::new(net, target, Domain::Integers, ilp_node_budget)),
        HeuristicKind::Struct => Box::new(Structural::new(StructContext::new(net), target)),
        HeuristicKind::Zero => Box::new(Zero),
    }
}
