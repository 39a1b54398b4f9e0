//! Exact linear and integer programming over the rationals.
//!
//! All problems minimize a linear objective over nonnegative variables
//! subject to `=` and `>=` rows. [`simplex_min`] is a dense two-phase simplex
//! using Bland's rule; [`ilp_min`] is a depth-first branch-and-bound on top
//! of it. No floating point is involved anywhere, so reported optima are
//! exact.

mod ilp;
mod simplex;

pub use ilp::{ilp_min, IlpOutcome, DEFAULT_NODE_BUDGET};
pub use simplex::simplex_min;

use num_traits::{Signed, Zero};

use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Eq,
    Geq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub coeffs: Vec<Rational>,
    pub sense: Sense,
    pub rhs: Rational,
}

impl Row {
    pub fn lhs(&self, point: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(point)
            .map(|(a, x)| a * x)
            .fold(Rational::zero(), |acc, v| acc + v)
    }

    pub fn is_satisfied_by(&self, point: &[Rational]) -> bool {
        let lhs = self.lhs(point);
        match self.sense {
            Sense::Eq => lhs == self.rhs,
            Sense::Geq => lhs >= self.rhs,
        }
    }
}

/// `min objective·x` subject to `rows`, `x >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalLP {
    pub num_vars: usize,
    pub objective: Vec<Rational>,
    pub rows: Vec<Row>,
}

impl RationalLP {
    pub fn new(objective: Vec<Rational>) -> Self {
        Self {
            num_vars: objective.len(),
            objective,
            rows: Vec::new(),
        }
    }

    /// Appends a row; panics when the coefficient count is not `num_vars`.
    pub fn add_row(&mut self, coeffs: Vec<Rational>, sense: Sense, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars, "row width must match num_vars");
        self.rows.push(Row { coeffs, sense, rhs });
    }

    pub fn with_row(mut self, coeffs: Vec<Rational>, sense: Sense, rhs: Rational) -> Self {
        self.add_row(coeffs, sense, rhs);
        self
    }

    pub fn value(&self, point: &[Rational]) -> Rational {
        self.objective
            .iter()
            .zip(point)
            .map(|(c, x)| c * x)
            .fold(Rational::zero(), |acc, v| acc + v)
    }

    /// Exact feasibility check of `point`, including nonnegativity.
    pub fn is_feasible(&self, point: &[Rational]) -> bool {
        point.len() == self.num_vars
            && point.iter().all(|x| !x.is_negative())
            && self.rows.iter().all(|r| r.is_satisfied_by(point))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, point: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}
