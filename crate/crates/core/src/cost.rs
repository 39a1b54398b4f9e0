use std::fmt;
use std::ops::Add;

use num_traits::{ToPrimitive, Zero};

use crate::Rational;

/// A nonnegative rational or infinity.
///
/// Variant order matters: every finite value sorts below `Infinite`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cost {
    Finite(Rational),
    Infinite,
}

impl Cost {
    pub fn zero() -> Self {
        Cost::Finite(Rational::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Cost::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Cost::Finite(v) => Some(v),
            Cost::Infinite => None,
        }
    }

    pub fn into_finite(self) -> Option<Rational> {
        match self {
            Cost::Finite(v) => Some(v),
            Cost::Infinite => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Cost::Finite(v) => v.to_f64().unwrap_or(f64::INFINITY),
            Cost::Infinite => f64::INFINITY,
        }
    }
}

impl From<Rational> for Cost {
    fn from(v: Rational) -> Self {
        Cost::Finite(v)
    }
}

impl Add<&Cost> for &Cost {
    type Output = Cost;

    fn add(self, rhs: &Cost) -> Cost {
        match (self, rhs) {
            (Cost::Finite(a), Cost::Finite(b)) => Cost::Finite(a + b),
            _ => Cost::Infinite,
        }
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::Finite(v) => write!(f, "{v}"),
            Cost::Infinite => write!(f, "inf"),
        }
    }
}
