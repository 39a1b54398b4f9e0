//! Problem instances and the line-oriented `.fnet` text format.
//!
//! ```text
//! net <name>
//! places: <id> <id> ...
//! init: <id>=<nat> | <id>>=<nat> ...          # omitted places: =0
//! transition <id> [weight <p>[/<q>]]           # default weight 1
//!   consume <id>:<nat> [<id>:<nat> ...]        # omitted: 0; line optional
//!   produce <id>:<nat> [<id>:<nat> ...]        # omitted: 0; line optional
//! target: <id>=<nat> | <id>>=<nat> ...         # omitted places: >=0
//! ```
//!
//! `#` starts a comment running to the end of the line. An `init` entry
//! `p>=k` marks `p` as upward-closed: any marking with at least `k` tokens
//! in `p` is initial. [`desugar_init`] turns those into generator transitions.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::net::{Marking, NetError, PetriNet, Transition};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Eq,
    Geq,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub op: Relation,
    pub bound: u64,
}

impl Constraint {
    pub fn eq(bound: u64) -> Self {
        Self { op: Relation::Eq, bound }
    }

    pub fn geq(bound: u64) -> Self {
        Self { op: Relation::Geq, bound }
    }

    pub fn holds(&self, value: u64) -> bool {
        match self.op {
            Relation::Eq => value == self.bound,
            Relation::Geq => value >= self.bound,
        }
    }
}

/// One constraint per place; describes the (possibly infinite) target set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TargetSpec {
    pub constraints: Vec<Constraint>,
}

impl TargetSpec {
    /// Every place unconstrained (`>= 0`).
    pub fn unconstrained(places: usize) -> Self {
        Self {
            constraints: vec![Constraint::geq(0); places],
        }
    }

    /// Exactly the marking `m`.
    pub fn exact(m: &Marking) -> Self {
        Self {
            constraints: m.counts().iter().map(|&c| Constraint::eq(c)).collect(),
        }
    }

    /// The upward closure of `m`.
    pub fn covering(m: &Marking) -> Self {
        Self {
            constraints: m.counts().iter().map(|&c| Constraint::geq(c)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn is_satisfied_by(&self, m: &Marking) -> bool {
        self.constraints.len() == m.len()
            && self.constraints.iter().zip(m.counts()).all(|(c, &v)| c.holds(v))
    }

    pub fn is_exact(&self) -> bool {
        self.constraints.iter().all(|c| c.op == Relation::Eq)
    }

    pub fn is_coverability(&self) -> bool {
        self.constraints.iter().all(|c| c.op == Relation::Geq)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("initial marking has {found} places, net has {expected}")]
    InitLength { expected: usize, found: usize },
    #[error("target has {found} constraints, net has {expected} places")]
    TargetLength { expected: usize, found: usize },
    #[error("upward-closed place {0} must start with at least one token")]
    UpwardWithoutToken(usize),
    #[error("upward-closed place index {0} out of range")]
    UpwardOutOfRange(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub net: PetriNet,
    pub init: Marking,
    /// Places whose initial count is a lower bound rather than exact.
    pub init_upward: BTreeSet<usize>,
    pub target: TargetSpec,
}

impl Instance {
    pub fn new(
        net: PetriNet,
        init: Marking,
        init_upward: BTreeSet<usize>,
        target: TargetSpec,
    ) -> Result<Self, InstanceError> {
        let places = net.num_places();
        if init.len() != places {
            return Err(InstanceError::InitLength {
                expected: places,
                found: init.len(),
            });
        }
        if target.len() != places {
            return Err(InstanceError::TargetLength {
                expected: places,
                found: target.len(),
            });
        }
        for &p in &init_upward {
            if p >= places {
                return Err(InstanceError::UpwardOutOfRange(p));
            }
            if init[p] == 0 {
                return Err(InstanceError::UpwardWithoutToken(p));
            }
        }
        Ok(Self {
            net,
            init,
            init_upward,
            target,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: duplicate identifier `{id}`")]
    DuplicateId { line: usize, id: String },
    #[error("line {line}: unknown place `{id}`")]
    UnknownPlace { line: usize, id: String },
    #[error("line {line}: transition `{id}` must have a positive weight")]
    NonPositiveWeight { line: usize, id: String },
    #[error(transparent)]
    Net(#[from] NetError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

struct PendingTransition {
    id: String,
    weight: Rational,
    consume: Option<Vec<u64>>,
    produce: Option<Vec<u64>>,
}

#[derive(Default)]
struct Parser {
    name: Option<String>,
    places: Option<Vec<String>>,
    init: Option<(Vec<u64>, BTreeSet<usize>)>,
    transitions: Vec<PendingTransition>,
    transition_ids: HashSet<String>,
    target: Option<Vec<Constraint>>,
}

impl Parser {
    fn places(&self, line: usize) -> Result<&[String], ParseError> {
        self.places
            .as_deref()
            .ok_or_else(|| syntax(line, "`places:` must be declared first"))
    }

    fn place(&self, line: usize, id: &str) -> Result<usize, ParseError> {
        self.places(line)?
            .iter()
            .position(|p| p == id)
            .ok_or_else(|| ParseError::UnknownPlace {
                line,
                id: id.to_string(),
            })
    }

    fn line(&mut self, line: usize, text: &str) -> Result<(), ParseError> {
        let mut tokens = text.split_whitespace();
        let Some(keyword) = tokens.next() else {
            return Ok(());
        };
        let rest: Vec<&str> = tokens.collect();
        if self.name.is_none() && keyword != "net" {
            return Err(syntax(line, "expected `net <name>` as the first directive"));
        }
        match keyword {
            "net" => {
                if self.name.is_some() {
                    return Err(syntax(line, "duplicate `net` directive"));
                }
                let [name] = rest[..] else {
                    return Err(syntax(line, "expected `net <name>`"));
                };
                self.name = Some(name.to_string());
            }
            "places:" => {
                if self.places.is_some() {
                    return Err(syntax(line, "duplicate `places:` directive"));
                }
                let mut seen = HashSet::new();
                for id in &rest {
                    check_id(line, id)?;
                    if !seen.insert(*id) {
                        return Err(ParseError::DuplicateId {
                            line,
                            id: id.to_string(),
                        });
                    }
                }
                self.places = Some(rest.iter().map(|s| s.to_string()).collect());
            }
            "init:" => {
                if self.init.is_some() {
                    return Err(syntax(line, "duplicate `init:` directive"));
                }
                let n = self.places(line)?.len();
                let mut counts = vec![0; n];
                let mut upward = BTreeSet::new();
                let mut seen = HashSet::new();
                for item in &rest {
                    let (id, op, value) = parse_assignment(line, item)?;
                    let p = self.place(line, id)?;
                    if !seen.insert(p) {
                        return Err(syntax(line, format!("place `{id}` assigned twice")));
                    }
                    counts[p] = value;
                    if op == Relation::Geq {
                        if value == 0 {
                            return Err(syntax(
                                line,
                                format!("upward-closed initial count for `{id}` must be at least 1"),
                            ));
                        }
                        upward.insert(p);
                    }
                }
                self.init = Some((counts, upward));
            }
            "target:" => {
                if self.target.is_some() {
                    return Err(syntax(line, "duplicate `target:` directive"));
                }
                let mut constraints = vec![Constraint::geq(0); self.places(line)?.len()];
                let mut seen = HashSet::new();
                for item in &rest {
                    let (id, op, bound) = parse_assignment(line, item)?;
                    let p = self.place(line, id)?;
                    if !seen.insert(p) {
                        return Err(syntax(line, format!("place `{id}` constrained twice")));
                    }
                    constraints[p] = Constraint { op, bound };
                }
                self.target = Some(constraints);
            }
            "transition" => {
                self.places(line)?;
                let (id, weight) = match rest[..] {
                    [id] => (id, Rational::one()),
                    [id, "weight", w] => (id, parse_weight(line, id, w)?),
                    _ => return Err(syntax(line, "expected `transition <id> [weight <p>[/<q>]]`")),
                };
                check_id(line, id)?;
                if !self.transition_ids.insert(id.to_string()) {
                    return Err(ParseError::DuplicateId {
                        line,
                        id: id.to_string(),
                    });
                }
                self.transitions.push(PendingTransition {
                    id: id.to_string(),
                    weight,
                    consume: None,
                    produce: None,
                });
            }
            "consume" | "produce" => {
                let n = self.places(line)?.len();
                let mut counts = vec![0; n];
                let mut seen = HashSet::new();
                for item in &rest {
                    let (id, value) = item
                        .split_once(':')
                        .ok_or_else(|| syntax(line, format!("expected `<place>:<count>`, got `{item}`")))?;
                    let p = self.place(line, id)?;
                    if !seen.insert(p) {
                        return Err(syntax(line, format!("place `{id}` listed twice")));
                    }
                    counts[p] = parse_nat(line, value)?;
                }
                let Some(current) = self.transitions.last_mut() else {
                    return Err(syntax(line, format!("`{keyword}` outside of a transition")));
                };
                let slot = if keyword == "consume" {
                    &mut current.consume
                } else {
                    &mut current.produce
                };
                if slot.is_some() {
                    return Err(syntax(line, format!("duplicate `{keyword}` line")));
                }
                *slot = Some(counts);
            }
            other => return Err(syntax(line, format!("unknown directive `{other}`"))),
        }
        Ok(())
    }

    fn finish(self, last_line: usize) -> Result<Instance, ParseError> {
        let name = self
            .name
            .ok_or_else(|| syntax(last_line, "missing `net <name>` directive"))?;
        let places = self
            .places
            .ok_or_else(|| syntax(last_line, "missing `places:` directive"))?;
        let n = places.len();
        let transitions = self
            .transitions
            .into_iter()
            .map(|t| Transition {
                id: t.id,
                guard: t.consume.unwrap_or_else(|| vec![0; n]),
                produce: t.produce.unwrap_or_else(|| vec![0; n]),
                weight: t.weight,
            })
            .collect();
        let net = PetriNet::new(name, places, transitions)?;
        let (init, upward) = self.init.unwrap_or_else(|| (vec![0; n], BTreeSet::new()));
        let target = TargetSpec {
            constraints: self.target.unwrap_or_else(|| vec![Constraint::geq(0); n]),
        };
        Ok(Instance::new(net, Marking(init), upward, target)?)
    }
}

fn check_id(line: usize, id: &str) -> Result<(), ParseError> {
    if id.is_empty() || id.contains(['=', ':', '>', '/']) {
        return Err(syntax(line, format!("invalid identifier `{id}`")));
    }
    Ok(())
}

fn parse_nat(line: usize, s: &str) -> Result<u64, ParseError> {
    s.parse()
        .map_err(|_| syntax(line, format!("expected a natural number, got `{s}`")))
}

fn parse_assignment<'a>(line: usize, item: &'a str) -> Result<(&'a str, Relation, u64), ParseError> {
    let (id, op, value) = if let Some((id, v)) = item.split_once(">=") {
        (id, Relation::Geq, v)
    } else if let Some((id, v)) = item.split_once('=') {
        (id, Relation::Eq, v)
    } else {
        return Err(syntax(line, format!("expected `<place>=<n>` or `<place>>=<n>`, got `{item}`")));
    };
    Ok((id, op, parse_nat(line, value)?))
}

fn parse_weight(line: usize, id: &str, s: &str) -> Result<Rational, ParseError> {
    let bad = || syntax(line, format!("invalid weight `{s}`"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    let w = Rational::new(p, q);
    if !w.is_positive() {
        return Err(ParseError::NonPositiveWeight {
            line,
            id: id.to_string(),
        });
    }
    Ok(w)
}

/// Parses `.fnet` text into a validated instance.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut parser = Parser::default();
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        last = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        parser.line(i + 1, content)?;
    }
    parser.finish(last.max(1))
}

fn write_constraints<'a>(out: &mut String, places: &[String], items: impl Iterator<Item = (bool, u64)> + 'a) {
    for (id, (upward, v)) in places.iter().zip(items) {
        let op = if upward { ">=" } else { "=" };
        let _ = write!(out, " {id}{op}{v}");
    }
}

fn write_vector(out: &mut String, keyword: &str, places: &[String], counts: &[u64]) {
    if counts.iter().all(|&c| c == 0) {
        return;
    }
    out.push_str("  ");
    out.push_str(keyword);
    for (id, &c) in places.iter().zip(counts) {
        if c > 0 {
            let _ = write!(out, " {id}:{c}");
        }
    }
    out.push('\n');
}

/// Canonical `.fnet` text for `inst`. Every place is listed in `init:` and `target:`.
pub fn serialize_instance(inst: &Instance) -> String {
    let net = &inst.net;
    let places = net.places();
    let mut out = String::new();
    let _ = writeln!(out, "net {}", net.name());
    out.push_str("places:");
    for p in places {
        let _ = write!(out, " {p}");
    }
    out.push('\n');
    out.push_str("init:");
    write_constraints(
        &mut out,
        places,
        inst.init
            .counts()
            .iter()
            .enumerate()
            .map(|(p, &c)| (inst.init_upward.contains(&p), c)),
    );
    out.push('\n');
    for t in net.transitions() {
        let _ = write!(out, "transition {}", t.id);
        if !t.weight.is_one() {
            let _ = write!(out, " weight {}", t.weight);
        }
        out.push('\n');
        write_vector(&mut out, "consume", places, &t.guard);
        write_vector(&mut out, "produce", places, &t.produce);
    }
    out.push_str("target:");
    write_constraints(
        &mut out,
        places,
        inst.target
            .constraints
            .iter()
            .map(|c| (c.op == Relation::Geq, c.bound)),
    );
    out.push('\n');
    out
}

/// Replaces upward-closed initial places by generator transitions.
///
/// See [`desugar_init_with_generators`]; this variant drops the index list.
pub fn desugar_init(inst: &Instance) -> Instance {
    desugar_init_with_generators(inst).0
}

/// For every upward-closed place `p`, appends a transition `gen_p` with an
/// empty guard producing one token into `p`. Generators are weighted like the
/// cheapest existing transition (1 for a net without transitions) and are
/// appended after the original transitions, whose indices are returned.
pub fn desugar_init_with_generators(inst: &Instance) -> (Instance, Vec<usize>) {
    if inst.init_upward.is_empty() {
        return (inst.clone(), Vec::new());
    }
    let net = &inst.net;
    let n = net.num_places();
    let weight = net.min_weight().cloned().unwrap_or_else(Rational::one);
    let mut ids: HashSet<String> = net.transitions().iter().map(|t| t.id.clone()).collect();
    let mut transitions = net.transitions().to_vec();
    let mut generators = Vec::new();
    for &p in &inst.init_upward {
        let base = format!("gen_{}", net.places()[p]);
        let mut id = base.clone();
        let mut suffix = 1;
        while ids.contains(&id) {
            id = format!("{base}_{suffix}");
            suffix += 1;
        }
        ids.insert(id.clone());
        let mut produce = vec![0; n];
        produce[p] = 1;
        generators.push(transitions.len());
        transitions.push(Transition::new(id, vec![0; n], produce).with_weight(weight.clone()));
    }
    let net = PetriNet::new(net.name(), net.places().to_vec(), transitions)
        .expect("generator ids are unique and dimensions match");
    let out = Instance {
        net,
        init: inst.init.clone(),
        init_upward: BTreeSet::new(),
        target: inst.target.clone(),
    };
    (out, generators)
}
