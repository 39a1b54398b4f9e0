use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_traits::Zero;

use super::Heuristic;
use crate::instance::{Relation, TargetSpec};
use crate::net::{Marking, PetriNet};
use crate::{Cost, Rational};

/// Structural abstraction of a net and its all-pairs shortest distances.
///
/// Nodes are the places plus an artificial sink `⊥` (index `num_places`).
/// Each transition `t` contributes an edge `p → q` of weight `λ(t)` for every
/// input place `p` and output place `q` with `p ≠ q`, where a transition
/// without inputs (resp. outputs) consumes from (resp. produces into) `⊥`.
#[derive(Debug, Clone)]
pub struct StructContext {
    num_places: usize,
    /// `(from, transition, to)`.
    edges: Vec<(usize, usize, usize)>,
    dist: Vec<Vec<Cost>>,
}

impl StructContext {
    pub fn new(net: &PetriNet) -> Self {
        let n = net.num_places();
        let sink = n;
        let mut edges = Vec::new();
        let mut adj: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n + 1];
        for (t, tr) in net.transitions().iter().enumerate() {
            let mut ins: Vec<usize> = tr.inputs().collect();
            let mut outs: Vec<usize> = tr.outputs().collect();
            if ins.is_empty() {
                ins.push(sink);
            }
            if outs.is_empty() {
                outs.push(sink);
            }
            for &p in &ins {
                for &q in &outs {
                    if p != q {
                        edges.push((p, t, q));
                        adj[p].push((q, tr.weight.clone()));
                    }
                }
            }
        }
        let dist = (0..=n).map(|s| shortest_paths(&adj, s)).collect();
        Self {
            num_places: n,
            edges,
            dist,
        }
    }

    pub fn sink(&self) -> usize {
        self.num_places
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    /// Shortest path weight from node `from` to node `to`.
    pub fn distance(&self, from: usize, to: usize) -> &Cost {
        &self.dist[from][to]
    }

    /// Cheapest way to move a token from `p` into one of `targets`.
    pub fn kappa(&self, p: usize, targets: &[usize]) -> Cost {
        targets
            .iter()
            .map(|&q| self.dist[p][q].clone())
            .min()
            .unwrap_or(Cost::Infinite)
    }

    /// `d_struct(m, m')` between two markings.
    pub fn marking_distance(&self, from: &Marking, to: &Marking) -> Cost {
        let targets: Vec<usize> = to.support().chain([self.sink()]).collect();
        self.max_kappa(from, &targets)
    }

    fn max_kappa(&self, from: &Marking, targets: &[usize]) -> Cost {
        from.support()
            .chain([self.sink()])
            .map(|p| self.kappa(p, targets))
            .max()
            .unwrap_or_else(Cost::zero)
    }
}

fn shortest_paths(adj: &[Vec<(usize, Rational)>], source: usize) -> Vec<Cost> {
    let mut dist = vec![Cost::Infinite; adj.len()];
    dist[source] = Cost::zero();
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((Rational::zero(), source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if dist[u] < Cost::Finite(d.clone()) {
            continue;
        }
        for (v, w) in &adj[u] {
            let nd = &d + w;
            if Cost::Finite(nd.clone()) < dist[*v] {
                dist[*v] = Cost::Finite(nd.clone());
                heap.push(Reverse((nd, *v)));
            }
        }
    }
    dist
}

/// `d_struct` towards a target set.
///
/// The target support is `⊥`, every place with a positive bound, and every
/// place constrained only from below (tokens may always stay there).
#[derive(Debug, Clone)]
pub struct Structural {
    ctx: StructContext,
    target_support: Vec<usize>,
}

impl Structural {
    pub fn new(ctx: StructContext, target: &TargetSpec) -> Self {
        let mut target_support: Vec<usize> = target
            .constraints
            .iter()
            .enumerate()
            .filter(|(_, c)| c.op == Relation::Geq || c.bound > 0)
            .map(|(p, _)| p)
            .collect();
        target_support.push(ctx.sink());
        Self { ctx, target_support }
    }

    pub fn context(&self) -> &StructContext {
        &self.ctx
    }
}

impl Heuristic for Structural {
    fn evaluate(&self, m: &Marking) -> Cost {
        self.ctx.max_kappa(m, &self.target_support)
    }

    fn name(&self) -> &'static str {
        "struct"
    }
}
