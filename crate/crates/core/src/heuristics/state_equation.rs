use num_traits::Zero;

use super::Heuristic;
use crate::instance::{Relation, TargetSpec};
use crate::net::{Marking, PetriNet};
use crate::ratlp::{ilp_min, simplex_min, IlpOutcome, LpOutcome, RationalLP, Sense};
use crate::{Cost, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Rationals,
    Integers,
}

/// State equation from `from` into the target set.
///
/// One variable per transition (its number of firings), objective
/// `Σ λ(t)·x_t`, and per place `p` the row `Σ_t effect(t)(p)·x_t ~ c(p) − from(p)`
/// where `~` is `=` for exact constraints and `>=` for lower bounds.
pub fn build_state_equation(net: &PetriNet, from: &Marking, target: &TargetSpec) -> RationalLP {
    let objective = net.transitions().iter().map(|t| t.weight.clone()).collect();
    let mut lp = RationalLP::new(objective);
    for (p, c) in target.constraints.iter().enumerate() {
        let coeffs = net
            .transitions()
            .iter()
            .map(|t| Rational::from_integer(t.effect(p).into()))
            .collect();
        let sense = match c.op {
            Relation::Eq => Sense::Eq,
            Relation::Geq => Sense::Geq,
        };
        let rhs = Rational::from_integer(c.bound.into()) - Rational::from_integer(from[p].into());
        lp.add_row(coeffs, sense, rhs);
    }
    lp
}

/// `d_Q` or `d_Z`: the weight of a cheapest solution of the state equation.
#[derive(Debug, Clone)]
pub struct StateEquation {
    net: PetriNet,
    target: TargetSpec,
    domain: Domain,
    ilp_node_budget: usize,
}

impl StateEquation {
    pub fn new(net: &PetriNet, target: &TargetSpec, domain: Domain, ilp_node_budget: usize) -> Self {
        Self {
            net: net.clone(),
            target: target.clone(),
            domain,
            ilp_node_budget: ilp_node_budget.max(1),
        }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }
}

impl Heuristic for StateEquation {
    fn evaluate(&self, m: &Marking) -> Cost {
        if self.target.is_satisfied_by(m) {
            return Cost::zero();
        }
        let lp = build_state_equation(&self.net, m, &self.target);
        match self.domain {
            Domain::Rationals => match simplex_min(&lp) {
                LpOutcome::Optimal { value, .. } => Cost::Finite(value),
                LpOutcome::Infeasible => Cost::Infinite,
                // Only reachable with a non-positive weight, which nets reject.
                LpOutcome::Unbounded => Cost::Finite(Rational::zero()),
            },
            Domain::Integers => match ilp_min(&lp, self.ilp_node_budget) {
                IlpOutcome::Optimal { value, .. } => Cost::Finite(value),
                IlpOutcome::Infeasible => Cost::Infinite,
                IlpOutcome::Unbounded => Cost::Finite(Rational::zero()),
                IlpOutcome::BudgetExhausted { lower_bound } => {
                    log::debug!("ILP budget exhausted at {m}, using bound {lower_bound}");
                    Cost::Finite(lower_bound)
                }
            },
        }
    }

    fn name(&self) -> &'static str {
        match self.domain {
            Domain::Rationals => "q",
            Domain::Integers => "z",
        }
    }
}
