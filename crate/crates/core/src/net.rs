//! Weighted Petri nets, markings and firing semantics.
//!
//! The reachability graph of a net is never built explicitly: [`PetriNet::successors`]
//! enumerates the outgoing edges of a marking on demand, which is all the
//! search needs.

use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetError {
    #[error("identifier must not be empty")]
    EmptyId,
    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),
    #[error("transition `{id}` has {found} entries, expected {expected} (one per place)")]
    DimensionMismatch {
        id: String,
        expected: usize,
        found: usize,
    },
    #[error("transition `{id}` has non-positive weight {weight}")]
    NonPositiveWeight { id: String, weight: Rational },
    #[error("transition index {0} out of range")]
    TransitionOutOfRange(usize),
    #[error("marking has {found} places, net has {expected}")]
    MarkingLength { expected: usize, found: usize },
    #[error("transition {transition} is not firable")]
    NotFirable { transition: usize },
    #[error("firing transition {transition} overflows place {place}")]
    Overflow { transition: usize, place: usize },
    #[error("replay failed at step {step}: {source}")]
    ReplayFailed {
        step: usize,
        #[source]
        source: Box<NetError>,
    },
}

/// A transition with dense guard (`consume`) and `produce` vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub id: String,
    pub guard: Vec<u64>,
    pub produce: Vec<u64>,
    pub weight: Rational,
}

impl Transition {
    /// Unit-weight transition.
    pub fn new(id: impl Into<String>, guard: Vec<u64>, produce: Vec<u64>) -> Self {
        Self {
            id: id.into(),
            guard,
            produce,
            weight: Rational::one(),
        }
    }

    pub fn with_weight(mut self, weight: Rational) -> Self {
        self.weight = weight;
        self
    }

    /// Net token change on `place` when the transition fires.
    pub fn effect(&self, place: usize) -> i128 {
        i128::from(self.produce[place]) - i128::from(self.guard[place])
    }

    pub fn effect_vector(&self) -> Vec<i128> {
        (0..self.guard.len()).map(|p| self.effect(p)).collect()
    }

    /// Places with a non-zero guard entry.
    pub fn inputs(&self) -> impl Iterator<Item = usize> + '_ {
        self.guard
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(p, _)| p)
    }

    /// Places with a non-zero produce entry.
    pub fn outputs(&self) -> impl Iterator<Item = usize> + '_ {
        self.produce
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(p, _)| p)
    }
}

/// A marking: one token count per place.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Marking(pub Vec<u64>);

impl Marking {
    pub fn zero(places: usize) -> Self {
        Marking(vec![0; places])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    /// Places carrying at least one token.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(p, _)| p)
    }
}

impl From<Vec<u64>> for Marking {
    fn from(counts: Vec<u64>) -> Self {
        Marking(counts)
    }
}

impl std::ops::Index<usize> for Marking {
    type Output = u64;

    fn index(&self, place: usize) -> &u64 {
        &self.0[place]
    }
}

impl fmt::Display for Marking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A firing sequence together with its weight and Parikh image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub sequence: Vec<usize>,
    pub total_weight: Rational,
    pub parikh: Vec<u64>,
}

impl Witness {
    pub fn empty(transitions: usize) -> Self {
        Self {
            sequence: Vec::new(),
            total_weight: Rational::zero(),
            parikh: vec![0; transitions],
        }
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PetriNet {
    name: String,
    places: Vec<String>,
    transitions: Vec<Transition>,
}

impl PetriNet {
    /// Validates ids, vector dimensions and weights.
    pub fn new(
        name: impl Into<String>,
        places: Vec<String>,
        transitions: Vec<Transition>,
    ) -> Result<Self, NetError> {
        check_unique(places.iter())?;
        check_unique(transitions.iter().map(|t| &t.id))?;
        for t in &transitions {
            for v in [&t.guard, &t.produce] {
                if v.len() != places.len() {
                    return Err(NetError::DimensionMismatch {
                        id: t.id.clone(),
                        expected: places.len(),
                        found: v.len(),
                    });
                }
            }
            if t.weight <= Rational::zero() {
                return Err(NetError::NonPositiveWeight {
                    id: t.id.clone(),
                    weight: t.weight.clone(),
                });
            }
        }
        Ok(Self {
            name: name.into(),
            places,
            transitions,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn places(&self) -> &[String] {
        &self.places
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn num_places(&self) -> usize {
        self.places.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.transitions.len()
    }

    pub fn transition(&self, t: usize) -> Result<&Transition, NetError> {
        self.transitions
            .get(t)
            .ok_or(NetError::TransitionOutOfRange(t))
    }

    pub fn place_index(&self, id: &str) -> Option<usize> {
        self.places.iter().position(|p| p == id)
    }

    pub fn transition_index(&self, id: &str) -> Option<usize> {
        self.transitions.iter().position(|t| t.id == id)
    }

    /// True when every transition has weight one.
    pub fn is_unweighted(&self) -> bool {
        self.transitions.iter().all(|t| t.weight.is_one())
    }

    pub fn min_weight(&self) -> Option<&Rational> {
        self.transitions.iter().map(|t| &t.weight).min()
    }

    pub fn max_weight(&self) -> Option<&Rational> {
        self.transitions.iter().map(|t| &t.weight).max()
    }

    fn check_marking(&self, m: &Marking) -> Result<(), NetError> {
        if m.len() != self.places.len() {
            return Err(NetError::MarkingLength {
                expected: self.places.len(),
                found: m.len(),
            });
        }
        Ok(())
    }

    pub fn is_firable(&self, m: &Marking, t: usize) -> Result<bool, NetError> {
        let tr = self.transition(t)?;
        self.check_marking(m)?;
        Ok(guard_holds(tr, m))
    }

    pub fn fire(&self, m: &Marking, t: usize) -> Result<Marking, NetError> {
        let tr = self.transition(t)?;
        self.check_marking(m)?;
        if !guard_holds(tr, m) {
            return Err(NetError::NotFirable { transition: t });
        }
        fire_unchecked(tr, t, m)
    }

    /// Fires `seq` from `m0`, returning the final marking and the witness.
    pub fn replay(&self, m0: &Marking, seq: &[usize]) -> Result<(Marking, Witness), NetError> {
        self.check_marking(m0)?;
        let mut witness = Witness::empty(self.transitions.len());
        let mut m = m0.clone();
        for (step, &t) in seq.iter().enumerate() {
            m = self.fire(&m, t).map_err(|e| NetError::ReplayFailed {
                step,
                source: Box::new(e),
            })?;
            witness.sequence.push(t);
            witness.total_weight += &self.transitions[t].weight;
            witness.parikh[t] += 1;
        }
        Ok((m, witness))
    }

    /// Firable transitions from `m` and the markings they lead to, in index order.
    pub fn successors(&self, m: &Marking) -> Result<Vec<(usize, Marking)>, NetError> {
        self.check_marking(m)?;
        self.transitions
            .iter()
            .enumerate()
            .filter(|(_, tr)| guard_holds(tr, m))
            .map(|(t, tr)| fire_unchecked(tr, t, m).map(|next| (t, next)))
            .collect()
    }
}

fn check_unique<'a>(ids: impl Iterator<Item = &'a String>) -> Result<(), NetError> {
    let mut seen = HashSet::new();
    for id in ids {
        if id.is_empty() {
            return Err(NetError::EmptyId);
        }
        if !seen.insert(id.as_str()) {
            return Err(NetError::DuplicateId(id.clone()));
        }
    }
    Ok(())
}

fn guard_holds(tr: &Transition, m: &Marking) -> bool {
    tr.guard.iter().zip(&m.0).all(|(g, c)| c >= g)
}

fn fire_unchecked(tr: &Transition, t: usize, m: &Marking) -> Result<Marking, NetError> {
    let mut next = Vec::with_capacity(m.len());
    for (place, ((&c, &g), &p)) in m.0.iter().zip(&tr.guard).zip(&tr.produce).enumerate() {
        let v = (c - g)
            .checked_add(p)
            .ok_or(NetError::Overflow { transition: t, place })?;
        next.push(v);
    }
    Ok(Marking(next))
}
