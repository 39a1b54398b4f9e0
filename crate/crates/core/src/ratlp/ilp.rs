use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{simplex_min, LpOutcome, RationalLP, Sense};
use crate::Rational;

pub const DEFAULT_NODE_BUDGET: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IlpOutcome {
    Optimal { value: Rational, point: Vec<BigInt> },
    Infeasible,
    /// The LP relaxation is unbounded.
    Unbounded,
    /// The node budget ran out; the optimum is at least `lower_bound`.
    BudgetExhausted { lower_bound: Rational },
}

/// Per-variable integer bounds of a branch-and-bound node.
#[derive(Clone)]
struct Node {
    lower: Vec<BigInt>,
    upper: Vec<Option<BigInt>>,
    /// LP value of the parent, a lower bound for everything below this node.
    parent_value: Option<Rational>,
}

/// Relaxation of `lp` restricted to the node's box, over shifted variables
/// `y = x - lower`. Returns `None` when the box is empty.
fn restricted(lp: &RationalLP, node: &Node) -> Option<RationalLP> {
    let lower: Vec<Rational> = node.lower.iter().map(|l| Rational::from_integer(l.clone())).collect();
    let mut out = RationalLP::new(lp.objective.clone());
    for row in &lp.rows {
        let shift = row.lhs(&lower);
        out.add_row(row.coeffs.clone(), row.sense, &row.rhs - shift);
    }
    for (var, upper) in node.upper.iter().enumerate() {
        if let Some(u) = upper {
            let width = u - &node.lower[var];
            if width < BigInt::zero() {
                return None;
            }
            let mut coeffs = vec![Rational::zero(); lp.num_vars];
            coeffs[var] = -Rational::one();
            out.add_row(coeffs, Sense::Geq, -Rational::from_integer(width));
        }
    }
    Some(out)
}

/// Whether the equality rows admit an integer solution, ignoring signs and
/// inequalities. Uses unimodular column operations to bring the system to
/// lower-triangular form and then substitutes forward.
fn equalities_integer_solvable(lp: &RationalLP) -> bool {
    let mut a: Vec<Vec<BigInt>> = Vec::new();
    let mut b: Vec<BigInt> = Vec::new();
    for row in lp.rows.iter().filter(|r| r.sense == Sense::Eq) {
        let scale = row
            .coeffs
            .iter()
            .chain(std::iter::once(&row.rhs))
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let scale = Rational::from_integer(scale);
        a.push(row.coeffs.iter().map(|c| (c * &scale).to_integer()).collect());
        b.push((&row.rhs * &scale).to_integer());
    }
    let n = lp.num_vars;
    let mut y: Vec<BigInt> = Vec::new();
    for r in 0..a.len() {
        let pivot = y.len();
        loop {
            let Some(min_col) = (pivot..n).filter(|&c| !a[r][c].is_zero()).min_by_key(|&c| a[r][c].abs()) else {
                break;
            };
            for row in a.iter_mut() {
                row.swap(pivot, min_col);
            }
            let mut done = true;
            for c in pivot + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let q = a[r][c].div_floor(&a[r][pivot]);
                for row in a.iter_mut() {
                    let v = &q * &row[pivot];
                    row[c] -= v;
                }
                done &= a[r][c].is_zero();
            }
            if done {
                break;
            }
        }
        let rest: BigInt = b[r].clone() - (0..pivot).map(|c| &a[r][c] * &y[c]).sum::<BigInt>();
        if pivot == n || a[r][pivot].is_zero() {
            if !rest.is_zero() {
                return false;
            }
        } else {
            let (q, m) = rest.div_mod_floor(&a[r][pivot]);
            if !m.is_zero() {
                return false;
            }
            y.push(q);
        }
    }
    true
}

/// Integer minimum of `lp` by depth-first branch-and-bound.
///
/// Equality rows without any integer solution are rejected up front.
/// Otherwise branches on the first fractional variable, exploring the
/// `<= floor` child before the `>= ceil` child. At most `node_budget` LP
/// relaxations are solved; on exhaustion the smallest bound over the
/// incumbent and all open nodes is returned, which never exceeds the true
/// integer optimum.
pub fn ilp_min(lp: &RationalLP, node_budget: usize) -> IlpOutcome {
    assert!(node_budget >= 1, "node budget must be positive");
    if !equalities_integer_solvable(lp) {
        return IlpOutcome::Infeasible;
    }
    let mut stack = vec![Node {
        lower: vec![BigInt::zero(); lp.num_vars],
        upper: vec![None; lp.num_vars],
        parent_value: None,
    }];
    let mut incumbent: Option<(Rational, Vec<BigInt>)> = None;
    let mut solved = 0;

    while let Some(node) = stack.pop() {
        if let (Some((best, _)), Some(pv)) = (&incumbent, &node.parent_value) {
            if pv >= best {
                continue;
            }
        }
        if solved == node_budget {
            stack.push(node);
            let open = stack.iter().filter_map(|n| n.parent_value.clone());
            let lower_bound = incumbent
                .map(|(v, _)| v)
                .into_iter()
                .chain(open)
                .min()
                .expect("the root is solved before the budget can run out");
            return IlpOutcome::BudgetExhausted { lower_bound };
        }
        solved += 1;

        let Some(relaxation) = restricted(lp, &node) else {
            continue;
        };
        let (value, point) = match simplex_min(&relaxation) {
            LpOutcome::Infeasible => continue,
            LpOutcome::Unbounded => return IlpOutcome::Unbounded,
            LpOutcome::Optimal { point, .. } => {
                let point: Vec<Rational> = point
                    .into_iter()
                    .zip(&node.lower)
                    .map(|(y, l)| y + Rational::from_integer(l.clone()))
                    .collect();
                (lp.value(&point), point)
            }
        };
        if let Some((best, _)) = &incumbent {
            if value >= *best {
                continue;
            }
        }
        match point.iter().position(|x| !x.is_integer()) {
            None => {
                let ints = point.into_iter().map(|x| x.to_integer()).collect();
                incumbent = Some((value, ints));
            }
            Some(var) => {
                let floor = point[var].floor().to_integer();
                let mut up = node.clone();
                up.lower[var] = &floor + BigInt::one();
                up.parent_value = Some(value.clone());
                let mut down = node;
                down.upper[var] = Some(floor);
                down.parent_value = Some(value);
                stack.push(up);
                stack.push(down);
            }
        }
    }

    match incumbent {
        Some((value, point)) => IlpOutcome::Optimal { value, point },
        None => IlpOutcome::Infeasible,
    }
}
