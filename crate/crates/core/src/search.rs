//! Best-first search over the reachability graph of a net.
//!
//! One loop serves Dijkstra, A* and greedy best-first search; they differ
//! only in the priority of a frontier node (`g`, `g + h` and `h`). Ties are
//! broken by smaller `h`, then by insertion order, so traces are
//! reproducible.
//!
//! Successors whose heuristic value is infinite are never queued: the target
//! set is provably unreachable from them. When the frontier runs dry the
//! target is therefore unreachable from the initial marking.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::fmt;
use std::time::{Duration, Instant};

use num_traits::Zero;
use thiserror::Error;

use crate::heuristics::Heuristic;
use crate::instance::Instance;
use crate::net::{Marking, NetError, Witness};
use crate::{Cost, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Strategy {
    Dijkstra,
    #[value(name = "astar")]
    AStar,
    Gbfs,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Dijkstra => "dijkstra",
            Strategy::AStar => "astar",
            Strategy::Gbfs => "gbfs",
        })
    }
}

#[derive(Debug, Clone, Default)]
pub struct SearchLimits {
    pub max_expansions: Option<u64>,
    pub max_time: Option<Duration>,
    /// Record the markings in expansion order in [`SearchResult::trace`].
    pub record_trace: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExhaustReason {
    MaxExpansions,
    Timeout,
    Overflow { transition: usize, place: usize },
}

impl fmt::Display for ExhaustReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExhaustReason::MaxExpansions => write!(f, "expansion limit reached"),
            ExhaustReason::Timeout => write!(f, "time limit reached"),
            ExhaustReason::Overflow { transition, place } => {
                write!(f, "token overflow firing transition {transition} into place {place}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Reachable { distance: Rational, witness: Witness },
    Unreachable,
    Exhausted(ExhaustReason),
}

impl Verdict {
    pub fn distance(&self) -> Option<&Rational> {
        match self {
            Verdict::Reachable { distance, .. } => Some(distance),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Reachable { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn is_reachable(&self) -> bool {
        matches!(self, Verdict::Reachable { .. })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub expanded: u64,
    pub discovered: u64,
    pub heuristic_calls: u64,
    /// Markings expanded more than once (after a `g` improvement).
    pub reexpanded: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub verdict: Verdict,
    pub stats: SearchStats,
    pub trace: Vec<Marking>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("broken parent chain at node {0}")]
    BrokenParentChain(usize),
}

/// A path to a marking, recorded once and never mutated: improving `g`
/// creates a new version, so every parent chain keeps its weight.
#[derive(Debug)]
struct Version {
    marking: usize,
    g: Rational,
    parent: Option<(usize, usize)>,
}

#[derive(Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Entry {
    priority: Rational,
    h: Rational,
    seq: u64,
    version: usize,
}

#[derive(Default)]
pub(crate) struct SearchTree {
    versions: Vec<Version>,
}

impl SearchTree {
    fn push(&mut self, marking: usize, g: Rational, parent: Option<(usize, usize)>) -> usize {
        self.versions.push(Version { marking, g, parent });
        self.versions.len() - 1
    }

    /// Transitions along the parent chain of `version`, from the root.
    pub(crate) fn reconstruct_witness(&self, version: usize) -> Result<Vec<usize>, SearchError> {
        let mut seq = Vec::new();
        let mut cur = version;
        let mut steps = 0;
        loop {
            let v = self
                .versions
                .get(cur)
                .ok_or(SearchError::BrokenParentChain(cur))?;
            match v.parent {
                None => break,
                Some((parent, t)) => {
                    if parent >= cur || steps > self.versions.len() {
                        return Err(SearchError::BrokenParentChain(cur));
                    }
                    seq.push(t);
                    cur = parent;
                    steps += 1;
                }
            }
        }
        seq.reverse();
        Ok(seq)
    }
}

fn priority(strategy: Strategy, g: &Rational, h: &Rational) -> Rational {
    match strategy {
        Strategy::Dijkstra => g.clone(),
        Strategy::AStar => g + h,
        Strategy::Gbfs => h.clone(),
    }
}

/// Searches from `inst.init` for a marking satisfying `inst.target`.
///
/// `inst.init_upward` is ignored; desugar the instance first. With Dijkstra,
/// or A* and a consistent heuristic, a reported distance is the optimum.
pub fn directed_search(
    inst: &Instance,
    strategy: Strategy,
    heuristic: &dyn Heuristic,
    limits: &SearchLimits,
) -> SearchResult {
    let start = Instant::now();
    let net = &inst.net;
    let mut stats = SearchStats::default();
    let mut trace = Vec::new();

    let mut tree = SearchTree::default();
    let mut markings: Vec<Marking> = Vec::new();
    let mut index: HashMap<Marking, usize> = HashMap::new();
    // Per marking: heuristic value, current best version, times expanded.
    let mut hval: Vec<Cost> = Vec::new();
    let mut best: Vec<Option<usize>> = Vec::new();
    let mut expansions: Vec<u32> = Vec::new();
    let mut heap = BinaryHeap::new();
    let mut seq = 0u64;

    let finish = |verdict, mut stats: SearchStats, trace| {
        stats.elapsed = start.elapsed();
        SearchResult { verdict, stats, trace }
    };

    let h0 = heuristic.evaluate(&inst.init);
    stats.heuristic_calls += 1;
    stats.discovered += 1;
    markings.push(inst.init.clone());
    index.insert(inst.init.clone(), 0);
    hval.push(h0.clone());
    expansions.push(0);
    let Cost::Finite(h0) = h0 else {
        best.push(None);
        return finish(Verdict::Unreachable, stats, trace);
    };
    let root = tree.push(0, Rational::zero(), None);
    best.push(Some(root));
    heap.push(Reverse(Entry {
        priority: priority(strategy, &Rational::zero(), &h0),
        h: h0,
        seq,
        version: root,
    }));

    while let Some(Reverse(entry)) = heap.pop() {
        let mi = tree.versions[entry.version].marking;
        if best[mi] != Some(entry.version) {
            continue;
        }
        if limits.max_expansions.is_some_and(|max| stats.expanded >= max) {
            return finish(Verdict::Exhausted(ExhaustReason::MaxExpansions), stats, trace);
        }
        if limits.max_time.is_some_and(|max| start.elapsed() >= max) {
            return finish(Verdict::Exhausted(ExhaustReason::Timeout), stats, trace);
        }

        stats.expanded += 1;
        expansions[mi] += 1;
        if expansions[mi] > 1 {
            stats.reexpanded += 1;
        }
        let m = markings[mi].clone();
        let g = tree.versions[entry.version].g.clone();
        log::trace!("expand {m} g={g} h={}", entry.h);
        if limits.record_trace {
            trace.push(m.clone());
        }

        #[cfg(debug_assertions)]
        {
            let path = tree
                .reconstruct_witness(entry.version)
                .expect("parent chains are well-formed");
            let (end, w) = net.replay(&inst.init, &path).expect("parent chains replay");
            debug_assert_eq!(end, m);
            debug_assert_eq!(w.total_weight, g);
        }

        if inst.target.is_satisfied_by(&m) {
            let path = match tree.reconstruct_witness(entry.version) {
                Ok(path) => path,
                Err(e) => panic!("search tree corrupted: {e}"),
            };
            let (_, witness) = net
                .replay(&inst.init, &path)
                .expect("a parent chain is a valid firing sequence");
            debug_assert_eq!(witness.total_weight, g);
            return finish(
                Verdict::Reachable {
                    distance: g,
                    witness,
                },
                stats,
                trace,
            );
        }

        let succs = match net.successors(&m) {
            Ok(s) => s,
            Err(NetError::Overflow { transition, place }) => {
                return finish(
                    Verdict::Exhausted(ExhaustReason::Overflow { transition, place }),
                    stats,
                    trace,
                );
            }
            Err(e) => unreachable!("markings produced by the search are well-formed: {e}"),
        };

        for (t, next) in succs {
            let g2 = &g + &net.transitions()[t].weight;
            let ni = match index.get(&next) {
                Some(&ni) => ni,
                None => {
                    let h = heuristic.evaluate(&next);
                    stats.heuristic_calls += 1;
                    stats.discovered += 1;
                    let ni = markings.len();
                    markings.push(next.clone());
                    index.insert(next, ni);
                    hval.push(h);
                    best.push(None);
                    expansions.push(0);
                    ni
                }
            };
            let Cost::Finite(h) = &hval[ni] else {
                continue;
            };
            let improves = match best[ni] {
                None => true,
                Some(v) => g2 < tree.versions[v].g,
            };
            if !improves {
                continue;
            }
            let v = tree.push(ni, g2.clone(), Some((entry.version, t)));
            best[ni] = Some(v);
            seq += 1;
            heap.push(Reverse(Entry {
                priority: priority(strategy, &g2, h),
                h: h.clone(),
                seq,
                version: v,
            }));
        }
    }

    finish(Verdict::Unreachable, stats, trace)
}
