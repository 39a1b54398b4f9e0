//! Random instance corpora and brute-force oracles shared by the
//! integration suites. Nothing here calls into the search or LP code; firing
//! is re-implemented on raw vectors.

#![allow(dead_code)]

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap, VecDeque};

use ffreach::instance::{Constraint, Instance, Relation, TargetSpec};
use ffreach::net::{Marking, PetriNet, Transition};
use ffreach::{rational, Rational};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// Random nets

const WEIGHTS: [(i64, i64); 5] = [(1, 1), (1, 2), (3, 2), (2, 1), (1, 3)];

/// A net whose transitions never increase `Σ w(p)·m(p)` for positive place
/// weights `w`, so every reachable set is finite.
pub fn bounded_net(rng: &mut ChaCha8Rng, places: usize, transitions: usize, weighted: bool) -> PetriNet {
    let pw: Vec<u64> = (0..places).map(|_| rng.gen_range(1..=2)).collect();
    let mut ts = Vec::new();
    for t in 0..transitions {
        let mut guard: Vec<u64> = (0..places).map(|_| if rng.gen_bool(0.5) { rng.gen_range(1..=2) } else { 0 }).collect();
        if guard.iter().all(|&g| g == 0) {
            guard[rng.gen_range(0..places)] = 1;
        }
        let mut produce: Vec<u64> = (0..places).map(|_| if rng.gen_bool(0.5) { rng.gen_range(1..=2) } else { 0 }).collect();
        let budget: u64 = guard.iter().zip(&pw).map(|(g, w)| g * w).sum();
        while produce.iter().zip(&pw).map(|(p, w)| p * w).sum::<u64>() > budget {
            let positive: Vec<usize> = (0..places).filter(|&p| produce[p] > 0).collect();
            produce[positive[rng.gen_range(0..positive.len())]] -= 1;
        }
        let weight = if weighted {
            let (n, d) = WEIGHTS[rng.gen_range(0..WEIGHTS.len())];
            rational(n, d)
        } else {
            Rational::one()
        };
        ts.push(Transition::new(format!("t{t}"), guard, produce).with_weight(weight));
    }
    PetriNet::new("rnd", (0..places).map(|p| format!("p{p}")).collect(), ts).unwrap()
}

/// Arbitrary (possibly unbounded) net with up to `max_places` places and
/// `max_transitions` transitions, small multiplicities and weights.
pub fn arb_net(max_places: usize, max_transitions: usize) -> impl Strategy<Value = PetriNet> {
    (1..=max_places).prop_flat_map(move |places| {
        let transition = (
            prop::collection::vec(0u64..=2, places),
            prop::collection::vec(0u64..=2, places),
            0..WEIGHTS.len(),
        );
        prop::collection::vec(transition, 0..=max_transitions).prop_map(move |ts| {
            let ts = ts
                .into_iter()
                .enumerate()
                .map(|(i, (guard, produce, w))| {
                    let (n, d) = WEIGHTS[w];
                    Transition::new(format!("t{i}"), guard, produce).with_weight(rational(n, d))
                })
                .collect();
            PetriNet::new("arb", (0..places).map(|p| format!("p{p}")).collect(), ts).unwrap()
        })
    })
}

/// A net together with a marking of matching length.
pub fn arb_net_and_marking(max_places: usize, max_transitions: usize) -> impl Strategy<Value = (PetriNet, Marking)> {
    arb_net(max_places, max_transitions).prop_flat_map(|net| {
        let n = net.num_places();
        (Just(net), prop::collection::vec(0u64..=4, n).prop_map(Marking))
    })
}

fn raw_fire(t: &Transition, m: &[u64]) -> Option<Vec<u64>> {
    if m.iter().zip(&t.guard).any(|(c, g)| c < g) {
        return None;
    }
    Some(m.iter().zip(&t.guard).zip(&t.produce).map(|((c, g), p)| c - g + p).collect())
}

fn random_target(rng: &mut ChaCha8Rng, net: &PetriNet, init: &Marking) -> TargetSpec {
    let n = net.num_places();
    let anchor: Vec<u64> = if rng.gen_bool(0.6) {
        // endpoint of a short random walk
        let mut m = init.0.clone();
        for _ in 0..rng.gen_range(0..8) {
            let firable: Vec<&Transition> = net.transitions().iter().filter(|t| raw_fire(t, &m).is_some()).collect();
            if firable.is_empty() {
                break;
            }
            m = raw_fire(firable[rng.gen_range(0..firable.len())], &m).unwrap();
        }
        m
    } else {
        (0..n).map(|_| rng.gen_range(0..=3)).collect()
    };
    let exact = rng.gen_bool(0.3);
    TargetSpec {
        constraints: anchor
            .iter()
            .map(|&v| {
                if exact {
                    return Constraint::eq(v);
                }
                match rng.gen_range(0..10) {
                    0..=4 => Constraint::eq(v),
                    5..=7 => Constraint::geq(rng.gen_range(0..=v)),
                    _ => Constraint::geq(0),
                }
            })
            .collect(),
    }
}

/// Random bounded instance: ≤ 4 places, ≤ 5 transitions, ≤ 5 initial tokens
/// per place, guard/produce multiplicities ≤ 2.
pub fn random_instance(seed: u64) -> Instance {
    let mut rng = rng(seed);
    loop {
        let places = rng.gen_range(1..=4);
        let transitions = rng.gen_range(1..=5);
        let weighted = rng.gen_bool(0.5);
        let net = bounded_net(&mut rng, places, transitions, weighted);
        let init = Marking((0..places).map(|_| if rng.gen_bool(0.3) { 0 } else { rng.gen_range(1..=5) }).collect());
        let target = random_target(&mut rng, &net, &init);
        let inst = Instance::new(net, init, BTreeSet::new(), target).unwrap();
        if reachable_set(&inst.net, &inst.init).len() <= 400 {
            return inst;
        }
    }
}

/// The corpus used by the oracle-equivalence suites.
pub fn corpus(size: usize) -> Vec<Instance> {
    (0..size as u64).map(|i| random_instance(0xC0FFEE + i)).collect()
}

/// Coverability instance: bounded net, 1–2 upward-closed initial places, all
/// targets `>=`.
pub fn random_coverability_instance(seed: u64) -> Instance {
    let mut rng = rng(seed);
    let places = rng.gen_range(2..=3);
    let transitions = rng.gen_range(1..=4);
    let net = bounded_net(&mut rng, places, transitions, false);
    let mut init = Marking((0..places).map(|_| if rng.gen_bool(0.5) { 0 } else { rng.gen_range(1..=2) }).collect());
    let mut upward = BTreeSet::new();
    for _ in 0..rng.gen_range(1..=2) {
        let p = rng.gen_range(0..places);
        upward.insert(p);
        init.0[p] = rng.gen_range(1..=2);
    }
    let target = TargetSpec {
        constraints: (0..places).map(|_| Constraint::geq(rng.gen_range(0..=2))).collect(),
    };
    Instance::new(net, init, upward, target).unwrap()
}

// ---------------------------------------------------------------------------
// Reachability oracles

/// All markings reachable from `init` (the net must be bounded).
pub fn reachable_set(net: &PetriNet, init: &Marking) -> BTreeSet<Vec<u64>> {
    let mut seen = BTreeSet::from([init.0.clone()]);
    let mut queue = VecDeque::from([init.0.clone()]);
    while let Some(m) = queue.pop_front() {
        for t in net.transitions() {
            if let Some(next) = raw_fire(t, &m) {
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    seen
}

/// Edges `(from, transition, to)` of the reachability graph.
pub fn reachability_edges(net: &PetriNet, init: &Marking) -> Vec<(Vec<u64>, usize, Vec<u64>)> {
    let mut edges = Vec::new();
    for m in reachable_set(net, init) {
        for (i, t) in net.transitions().iter().enumerate() {
            if let Some(next) = raw_fire(t, &m) {
                edges.push((m.clone(), i, next));
            }
        }
    }
    edges
}

/// Weighted distance from `init` to the nearest target marking, by an
/// exhaustive Dijkstra over the finite reachability graph.
pub fn oracle_distance(inst: &Instance) -> Option<Rational> {
    let net = &inst.net;
    let mut dist: HashMap<Vec<u64>, Rational> = HashMap::from([(inst.init.0.clone(), Rational::zero())]);
    let mut heap = BinaryHeap::from([Reverse((Rational::zero(), inst.init.0.clone()))]);
    let mut best: Option<Rational> = None;
    while let Some(Reverse((d, m))) = heap.pop() {
        if dist.get(&m).is_some_and(|known| *known < d) {
            continue;
        }
        if satisfies(&inst.target, &m) {
            best = Some(match best {
                Some(b) if b <= d => b,
                _ => d.clone(),
            });
        }
        for t in net.transitions() {
            if let Some(next) = raw_fire(t, &m) {
                let nd = &d + &t.weight;
                if dist.get(&next).map_or(true, |known| nd < *known) {
                    dist.insert(next.clone(), nd.clone());
                    heap.push(Reverse((nd, next)));
                }
            }
        }
    }
    best
}

/// Unit-weight distance by breadth-first search.
pub fn oracle_bfs_steps(inst: &Instance) -> Option<usize> {
    let net = &inst.net;
    let mut seen = BTreeSet::from([inst.init.0.clone()]);
    let mut queue = VecDeque::from([(inst.init.0.clone(), 0usize)]);
    while let Some((m, d)) = queue.pop_front() {
        if satisfies(&inst.target, &m) {
            return Some(d);
        }
        for t in net.transitions() {
            if let Some(next) = raw_fire(t, &m) {
                if seen.insert(next.clone()) {
                    queue.push_back((next, d + 1));
                }
            }
        }
    }
    None
}

/// Distance to the target set from every reachable marking (reverse
/// Dijkstra from all target markings inside the reachable set).
pub fn distances_to_target(inst: &Instance) -> BTreeMap<Vec<u64>, Option<Rational>> {
    let edges = reachability_edges(&inst.net, &inst.init);
    let nodes = reachable_set(&inst.net, &inst.init);
    let mut rev: HashMap<Vec<u64>, Vec<(Vec<u64>, Rational)>> = HashMap::new();
    for (from, t, to) in edges {
        rev.entry(to).or_default().push((from, inst.net.transitions()[t].weight.clone()));
    }
    let mut dist: HashMap<Vec<u64>, Rational> = HashMap::new();
    let mut heap = BinaryHeap::new();
    for m in &nodes {
        if satisfies(&inst.target, m) {
            dist.insert(m.clone(), Rational::zero());
            heap.push(Reverse((Rational::zero(), m.clone())));
        }
    }
    while let Some(Reverse((d, m))) = heap.pop() {
        if dist.get(&m).is_some_and(|known| *known < d) {
            continue;
        }
        for (prev, w) in rev.get(&m).into_iter().flatten() {
            let nd = &d + w;
            if dist.get(prev).map_or(true, |known| nd < *known) {
                dist.insert(prev.clone(), nd.clone());
                heap.push(Reverse((nd, prev.clone())));
            }
        }
    }
    nodes.into_iter().map(|m| {
        let d = dist.get(&m).cloned();
        (m, d)
    }).collect()
}

pub fn satisfies(target: &TargetSpec, m: &[u64]) -> bool {
    target.constraints.iter().zip(m).all(|(c, &v)| match c.op {
        Relation::Eq => v == c.bound,
        Relation::Geq => v >= c.bound,
    })
}

/// Coverability from an upward-closed initial set, by enumerating initial
/// markings with every upward-closed place holding between its lower bound
/// and `token_bound` tokens, and exploring each finite reachability set.
pub fn oracle_coverable(inst: &Instance, token_bound: u64) -> bool {
    let upward: Vec<usize> = inst.init_upward.iter().copied().collect();
    let mut choices = vec![inst.init.0.clone()];
    for &p in &upward {
        let lo = inst.init[p];
        choices = choices
            .into_iter()
            .flat_map(|m| {
                (lo..=token_bound.max(lo)).map(move |k| {
                    let mut m = m.clone();
                    m[p] = k;
                    m
                })
            })
            .collect();
    }
    choices.into_iter().any(|m0| {
        reachable_set(&inst.net, &Marking(m0)).iter().any(|m| satisfies(&inst.target, m))
    })
}

/// Exact coverability from an upward-closed initial set by backward
/// saturation of the minimal basis of the set of markings that can cover the
/// target. Returns the least number of tokens the upward-closed places need
/// (the maximum over those places), or `None` if no initial marking works.
pub fn backward_coverability(inst: &Instance) -> Option<u64> {
    let goal: Vec<u64> = inst.target.constraints.iter().map(|c| {
        assert_eq!(c.op, Relation::Geq, "coverability targets only");
        c.bound
    }).collect();
    let mut basis: Vec<Vec<u64>> = vec![goal];
    let mut frontier = basis.clone();
    while let Some(m) = frontier.pop() {
        for t in inst.net.transitions() {
            let pre: Vec<u64> = m.iter().zip(&t.guard).zip(&t.produce).map(|((v, g), p)| g + v.saturating_sub(*p)).collect();
            if basis.iter().any(|b| b.iter().zip(&pre).all(|(x, y)| x <= y)) {
                continue;
            }
            basis.retain(|b| !pre.iter().zip(b).all(|(x, y)| x <= y));
            frontier.retain(|b| !pre.iter().zip(b).all(|(x, y)| x <= y));
            basis.push(pre.clone());
            frontier.push(pre);
        }
    }
    basis
        .iter()
        .filter(|b| (0..b.len()).all(|p| inst.init_upward.contains(&p) || b[p] <= inst.init[p]))
        .map(|b| inst.init_upward.iter().map(|&p| b[p].max(inst.init[p])).max().unwrap_or(0))
        .min()
}

// ---------------------------------------------------------------------------
// LP oracles

/// Solves a square system exactly; `None` when singular.
pub fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                for c in col..n {
                    let v = &f * &a[col][c];
                    a[r][c] -= v;
                }
                let v = &f * &b[col];
                b[r] -= v;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Dense LP data for the oracles: `rows` are `(coeffs, is_eq, rhs)`.
#[derive(Debug, Clone)]
pub struct PlainLp {
    pub objective: Vec<Rational>,
    pub rows: Vec<(Vec<Rational>, bool, Rational)>,
}

impl PlainLp {
    pub fn feasible(&self, x: &[Rational]) -> bool {
        x.iter().all(|v| !v.is_negative())
            && self.rows.iter().all(|(a, eq, b)| {
                let lhs: Rational = a.iter().zip(x).map(|(ai, xi)| ai * xi).sum();
                if *eq {
                    lhs == *b
                } else {
                    lhs >= *b
                }
            })
    }

    pub fn value(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }
}

/// Minimum over all basic feasible solutions: every choice of `n` linearly
/// independent tight constraints among rows and `x_i = 0` bounds.
/// Exact for bounded-below objectives (the feasible region has vertices
/// because of `x >= 0`).
pub fn vertex_enumeration_min(lp: &PlainLp) -> Option<Rational> {
    let n = lp.objective.len();
    let mut hyperplanes: Vec<(Vec<Rational>, Rational)> = lp.rows.iter().map(|(a, _, b)| (a.clone(), b.clone())).collect();
    for i in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[i] = Rational::one();
        hyperplanes.push((e, Rational::zero()));
    }
    let mut best: Option<Rational> = None;
    for subset in combinations(hyperplanes.len(), n) {
        let a = subset.iter().map(|&i| hyperplanes[i].0.clone()).collect();
        let b = subset.iter().map(|&i| hyperplanes[i].1.clone()).collect();
        let Some(x) = solve_square(a, b) else {
            continue;
        };
        if lp.feasible(&x) {
            let v = lp.value(&x);
            if best.as_ref().map_or(true, |b| v < *b) {
                best = Some(v);
            }
        }
    }
    best
}

/// Integer minimum over the box `0 <= x_i <= bound`.
pub fn integer_box_min(lp: &PlainLp, bound: i64) -> Option<Rational> {
    let n = lp.objective.len();
    let mut x = vec![0i64; n];
    let mut best: Option<Rational> = None;
    loop {
        let point: Vec<Rational> = x.iter().map(|&v| rational(v, 1)).collect();
        if lp.feasible(&point) {
            let v = lp.value(&point);
            if best.as_ref().map_or(true, |b| v < *b) {
                best = Some(v);
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return best;
            }
            x[i] += 1;
            if x[i] <= bound {
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

/// Random LP with ≤ 4 variables and ≤ 4 rows, small integer data and a
/// nonnegative objective.
pub fn random_lp(rng: &mut ChaCha8Rng) -> PlainLp {
    let n = rng.gen_range(1..=4);
    let m = rng.gen_range(1..=4);
    PlainLp {
        objective: (0..n).map(|_| rational(rng.gen_range(0..=4), rng.gen_range(1..=2))).collect(),
        rows: (0..m)
            .map(|_| {
                (
                    (0..n).map(|_| rational(rng.gen_range(-3..=3), 1)).collect(),
                    rng.gen_bool(0.5),
                    rational(rng.gen_range(-4..=6), 1),
                )
            })
            .collect(),
    }
}

pub fn to_rational_lp(lp: &PlainLp) -> ffreach::ratlp::RationalLP {
    let mut out = ffreach::ratlp::RationalLP::new(lp.objective.clone());
    for (a, eq, b) in &lp.rows {
        let sense = if *eq { ffreach::ratlp::Sense::Eq } else { ffreach::ratlp::Sense::Geq };
        out.add_row(a.clone(), sense, b.clone());
    }
    out
}

/// Integer system bounded by `Σ x <= 8`.
pub fn random_bounded_ilp(rng: &mut ChaCha8Rng) -> PlainLp {
    let mut lp = random_lp(rng);
    let n = lp.objective.len();
    for c in lp.objective.iter_mut() {
        *c = rational(rng.gen_range(1..=4), 1);
    }
    for row in lp.rows.iter_mut() {
        row.2 = rational(rng.gen_range(-2..=6), 1);
    }
    lp.rows.push((vec![rational(-1, 1); n], false, rational(-8, 1)));
    lp
}
