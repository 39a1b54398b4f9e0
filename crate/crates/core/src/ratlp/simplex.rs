use num_traits::{One, Signed, Zero};

use super::{LpOutcome, RationalLP, Sense};
use crate::Rational;

/// Dense tableau in equality form. Column layout: original variables, one
/// surplus per `>=` row, one artificial per row; the last entry of each row
/// is the right-hand side.
struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    num_cols: usize,
    /// Columns that may enter the basis.
    allowed: Vec<bool>,
}

enum Step {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.num_cols]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = Rational::one() / &self.rows[row][col];
        for v in self.rows[row].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.rows[row].clone();
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let factor = r[col].clone();
            for (v, p) in r.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Reduced costs `c_j - c_B B^-1 A_j` for `cost`.
    fn reduced_costs(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut d = cost.to_vec();
        for (i, r) in self.rows.iter().enumerate() {
            let cb = &cost[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for (dj, a) in d.iter_mut().zip(r) {
                if !a.is_zero() {
                    *dj -= cb * a;
                }
            }
        }
        d
    }

    /// Primal simplex with Bland's rule: lowest-index entering column with
    /// negative reduced cost, lowest-index basic variable among ratio ties.
    fn optimize(&mut self, cost: &[Rational]) -> Step {
        loop {
            let d = self.reduced_costs(cost);
            let Some(enter) = (0..self.num_cols).find(|&j| self.allowed[j] && d[j].is_negative()) else {
                return Step::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((li, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((row, _)) => self.pivot(row, enter),
                None => return Step::Unbounded,
            }
        }
    }
}

/// Exact minimum of `lp` by two-phase simplex.
pub fn simplex_min(lp: &RationalLP) -> LpOutcome {
    let n = lp.num_vars;
    let m = lp.rows.len();
    let surplus: usize = lp.rows.iter().filter(|r| r.sense == Sense::Geq).count();
    let art0 = n + surplus;
    let num_cols = art0 + m;

    let mut rows = Vec::with_capacity(m);
    let mut next_surplus = n;
    for (i, r) in lp.rows.iter().enumerate() {
        let mut row = vec![Rational::zero(); num_cols + 1];
        row[..n].clone_from_slice(&r.coeffs);
        if r.sense == Sense::Geq {
            row[next_surplus] = -Rational::one();
            next_surplus += 1;
        }
        row[num_cols] = r.rhs.clone();
        if r.rhs.is_negative() {
            for v in row.iter_mut() {
                *v = -&*v;
            }
        }
        row[art0 + i] = Rational::one();
        rows.push(row);
    }

    let mut tab = Tableau {
        rows,
        basis: (art0..num_cols).collect(),
        num_cols,
        allowed: vec![true; num_cols],
    };

    // Phase 1: minimize the sum of artificials.
    let mut phase1 = vec![Rational::zero(); num_cols];
    for c in &mut phase1[art0..] {
        *c = Rational::one();
    }
    if let Step::Unbounded = tab.optimize(&phase1) {
        unreachable!("phase 1 objective is bounded below by zero");
    }
    let infeasibility = (0..m)
        .filter(|&i| tab.basis[i] >= art0)
        .fold(Rational::zero(), |acc, i| acc + tab.rhs(i));
    if infeasibility.is_positive() {
        return LpOutcome::Infeasible;
    }

    // Drive zero-level artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < tab.rows.len() {
        if tab.basis[i] >= art0 {
            match (0..art0).find(|&j| !tab.rows[i][j].is_zero()) {
                Some(j) => tab.pivot(i, j),
                None => {
                    tab.rows.remove(i);
                    tab.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    for a in &mut tab.allowed[art0..] {
        *a = false;
    }

    // Phase 2.
    let mut cost = vec![Rational::zero(); num_cols];
    cost[..n].clone_from_slice(&lp.objective);
    if let Step::Unbounded = tab.optimize(&cost) {
        return LpOutcome::Unbounded;
    }
    let mut point = vec![Rational::zero(); n];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < n {
            point[b] = tab.rhs(i).clone();
        }
    }
    let value = lp.value(&point);
    debug_assert!(lp.is_feasible(&point));
    LpOutcome::Optimal { value, point }
}
