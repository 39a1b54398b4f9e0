//! Reachability and coverability for weighted Petri nets by directed search.
//!
//! The reachability graph of a net is explored on the fly with Dijkstra, A*
//! or greedy best-first search. A* and greedy search are guided by lower bounds
//! on the remaining distance:
//!
//! * the state equation solved over the rationals ([`heuristics::StateEquation`]
//!   with [`heuristics::Domain::Rationals`]) or the integers
//!   ([`heuristics::Domain::Integers`]), both computed exactly by the
//!   [`ratlp`] engine;
//! * a structural abstraction of the net ([`heuristics::Structural`]).
//!
//! All of these are consistent heuristics, so A* reports shortest witnesses.
//! Search that runs out of candidates proves the target unreachable.
//!
//! ```
//! use ffreach::{instance, search, heuristics};
//!
//! let inst = instance::parse_instance(
//!     "net counter\n\
//!      places: p1 p2\n\
//!      init: p1=0 p2=0\n\
//!      transition t1\n  produce p1:1\n\
//!      transition t2\n  consume p1:1\n  produce p1:1 p2:1\n\
//!      transition t3\n  consume p1:1\n\
//!      target: p1=0 p2=1\n",
//! ).unwrap();
//! let h = heuristics::build(heuristics::HeuristicKind::Q, &inst.net, &inst.target, 10_000);
//! let res = search::directed_search(&inst, search::Strategy::AStar, h.as_ref(), &Default::default());
//! assert_eq!(res.verdict.distance().unwrap().to_string(), "3");
//! ```

pub mod app;
pub mod cost;
pub mod heuristics;
pub mod instance;
pub mod net;
pub mod prune;
pub mod ratlp;
pub mod report;
pub mod search;
pub mod walk;

pub use cost::Cost;
pub use instance::{Constraint, Instance, Relation, TargetSpec};
pub use net::{Marking, NetError, PetriNet, Transition, Witness};

/// Arbitrary-precision rational used for weights, distances and LP data.
pub type Rational = num_rational::BigRational;

/// Shorthand for `numer/denom` as a [`Rational`].
pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}
