//! The end-to-end solve pipeline and its machine-readable report.

use std::fmt::Write as _;
use std::time::Instant;

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::heuristics::{self, HeuristicKind};
use crate::instance::{desugar_init_with_generators, Instance};
use crate::prune::{prune_instance, PruneVerdict};
use crate::ratlp::DEFAULT_NODE_BUDGET;
use crate::search::{directed_search, SearchLimits, SearchStats, Strategy, Verdict};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveConfig {
    pub strategy: Strategy,
    pub heuristic: HeuristicKind,
    pub prune: bool,
    pub ilp_node_budget: usize,
    pub max_expansions: Option<u64>,
    pub max_time_ms: Option<u64>,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            strategy: Strategy::AStar,
            heuristic: HeuristicKind::Q,
            prune: true,
            ilp_node_budget: DEFAULT_NODE_BUDGET,
            max_expansions: None,
            max_time_ms: None,
        }
    }
}

/// Result of [`solve`], expressed over the desugared instance.
#[derive(Debug, Clone)]
pub struct Solution {
    /// Desugared input: the original net plus generator transitions.
    pub instance: Instance,
    /// Indices of generator transitions in `instance.net`.
    pub generators: Vec<usize>,
    /// Witness transitions index `instance.net` (pruning already undone).
    pub verdict: Verdict,
    pub stats: SearchStats,
    pub prune_verdict: Option<PruneVerdict>,
    pub removed_places: usize,
    pub removed_transitions: usize,
    pub wall_ms: u64,
}

impl Solution {
    pub fn generator_firings(&self) -> u64 {
        self.verdict
            .witness()
            .map(|w| self.generators.iter().map(|&g| w.parikh[g]).sum())
            .unwrap_or(0)
    }

    pub fn generator_weight(&self) -> Rational {
        let Some(w) = self.verdict.witness() else {
            return Rational::zero();
        };
        self.generators
            .iter()
            .map(|&g| &self.instance.net.transitions()[g].weight * Rational::from_integer(w.parikh[g].into()))
            .fold(Rational::zero(), |a, b| a + b)
    }
}

/// Desugars, optionally prunes, builds the heuristic and searches.
pub fn solve(inst: &Instance, cfg: &SolveConfig) -> Solution {
    let start = Instant::now();
    let (desugared, generators) = desugar_init_with_generators(inst);

    let limits = SearchLimits {
        max_expansions: cfg.max_expansions,
        max_time: cfg.max_time_ms.map(std::time::Duration::from_millis),
        record_trace: false,
    };
    let run = |target: &Instance| {
        let h = heuristics::build(cfg.heuristic, &target.net, &target.target, cfg.ilp_node_budget);
        directed_search(target, cfg.strategy, h.as_ref(), &limits)
    };

    let mut solution = Solution {
        instance: desugared.clone(),
        generators,
        verdict: Verdict::Unreachable,
        stats: SearchStats::default(),
        prune_verdict: None,
        removed_places: 0,
        removed_transitions: 0,
        wall_ms: 0,
    };

    if cfg.prune {
        let pruned = prune_instance(&desugared);
        solution.prune_verdict = Some(pruned.verdict);
        solution.removed_places = pruned.kept_places.iter().filter(|k| k.is_none()).count();
        solution.removed_transitions = pruned.kept_transitions.iter().filter(|k| k.is_none()).count();
        log::debug!(
            "pruning removed {} places and {} transitions",
            solution.removed_places,
            solution.removed_transitions
        );
        if pruned.verdict == PruneVerdict::Pruned {
            let res = run(&pruned.instance);
            solution.stats = res.stats;
            solution.verdict = match res.verdict {
                Verdict::Reachable { distance, witness } => Verdict::Reachable {
                    distance,
                    witness: pruned.lift_witness(&witness),
                },
                other => other,
            };
        }
    } else {
        let res = run(&desugared);
        solution.stats = res.stats;
        solution.verdict = res.verdict;
    }
    solution.wall_ms = start.elapsed().as_millis() as u64;
    solution
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsReport {
    pub expanded: u64,
    pub discovered: u64,
    pub heuristic_calls: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PruneReport {
    pub enabled: bool,
    pub removed_places: usize,
    pub removed_transitions: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigReport {
    pub strategy: String,
    pub heuristic: String,
    pub prune: bool,
    pub ilp_node_budget: usize,
    pub max_expansions: Option<u64>,
    pub max_time_ms: Option<u64>,
}

/// Serializable summary of a [`Solution`]. Field order is the JSON order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub net: String,
    /// `reachable`, `unreachable` or `exhausted`.
    pub verdict: String,
    pub reason: Option<String>,
    /// Exact distance as `p` or `p/q`.
    pub distance: Option<String>,
    pub distance_decimal: Option<f64>,
    pub witness: Option<Vec<String>>,
    pub generator_firings: u64,
    pub generator_weight: String,
    pub stats: StatsReport,
    pub pruning: PruneReport,
    pub config: ConfigReport,
}

impl SolveReport {
    /// Builds the report; wall-clock time is included only if `timing` is set,
    /// so that reports are reproducible byte for byte by default.
    pub fn new(solution: &Solution, cfg: &SolveConfig, timing: bool) -> Self {
        let (verdict, reason) = match &solution.verdict {
            Verdict::Reachable { .. } => ("reachable", None),
            Verdict::Unreachable => (
                "unreachable",
                (solution.prune_verdict == Some(PruneVerdict::ImmediatelyUnreachable))
                    .then(|| "target needs tokens in a place that is never marked".to_string()),
            ),
            Verdict::Exhausted(r) => ("exhausted", Some(r.to_string())),
        };
        let net = &solution.instance.net;
        Self {
            net: net.name().to_string(),
            verdict: verdict.to_string(),
            reason,
            distance: solution.verdict.distance().map(|d| d.to_string()),
            distance_decimal: solution.verdict.distance().and_then(|d| d.to_f64()),
            witness: solution.verdict.witness().map(|w| {
                w.sequence
                    .iter()
                    .map(|&t| net.transitions()[t].id.clone())
                    .collect()
            }),
            generator_firings: solution.generator_firings(),
            generator_weight: solution.generator_weight().to_string(),
            stats: StatsReport {
                expanded: solution.stats.expanded,
                discovered: solution.stats.discovered,
                heuristic_calls: solution.stats.heuristic_calls,
                wall_ms: timing.then_some(solution.wall_ms),
            },
            pruning: PruneReport {
                enabled: cfg.prune,
                removed_places: solution.removed_places,
                removed_transitions: solution.removed_transitions,
            },
            config: ConfigReport {
                strategy: cfg.strategy.to_string(),
                heuristic: cfg.heuristic.to_string(),
                prune: cfg.prune,
                ilp_node_budget: cfg.ilp_node_budget,
                max_expansions: cfg.max_expansions,
                max_time_ms: cfg.max_time_ms,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "net: {}", self.net);
        let _ = writeln!(out, "verdict: {}", self.verdict);
        if let Some(reason) = &self.reason {
            let _ = writeln!(out, "reason: {reason}");
        }
        if let (Some(d), Some(f)) = (&self.distance, self.distance_decimal) {
            let _ = writeln!(out, "distance: {d} ({f:.6})");
        }
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "witness: {}", w.join(" "));
            let _ = writeln!(
                out,
                "generator firings: {} (weight {})",
                self.generator_firings, self.generator_weight
            );
        }
        let _ = writeln!(
            out,
            "expanded: {}, discovered: {}, heuristic calls: {}",
            self.stats.expanded, self.stats.discovered, self.stats.heuristic_calls
        );
        if let Some(ms) = self.stats.wall_ms {
            let _ = writeln!(out, "time: {ms} ms");
        }
        let _ = writeln!(
            out,
            "config: strategy={} heuristic={} prune={} ilp-node-budget={}",
            self.config.strategy, self.config.heuristic, self.config.prune, self.config.ilp_node_budget
        );
        out
    }
}
