//! The exact LP and ILP engines on their own.

use ffreach::ratlp::{ilp_min, simplex_min, IlpOutcome, LpOutcome, RationalLP, Sense, DEFAULT_NODE_BUDGET};
use ffreach::rational;

fn show_lp(label: &str, outcome: LpOutcome) {
    match outcome {
        LpOutcome::Optimal { value, point } => {
            let point: Vec<String> = point.iter().map(|x| x.to_string()).collect();
            println!("{label}: {value} at ({})", point.join(", "));
        }
        other => println!("{label}: {other:?}"),
    }
}

fn show_ilp(label: &str, outcome: IlpOutcome) {
    match outcome {
        IlpOutcome::Optimal { value, point } => {
            let point: Vec<String> = point.iter().map(|x| x.to_string()).collect();
            println!("{label}: {value} at ({})", point.join(", "));
        }
        IlpOutcome::BudgetExhausted { lower_bound } => println!("{label}: at least {lower_bound}"),
        other => println!("{label}: {other:?}"),
    }
}

fn main() {
    // min x + y  s.t.  x + 2y = 4,  3x - y >= 1
    let lp = RationalLP::new(vec![rational(1, 1), rational(1, 1)])
        .with_row(vec![rational(1, 1), rational(2, 1)], Sense::Eq, rational(4, 1))
        .with_row(vec![rational(3, 1), rational(-1, 1)], Sense::Geq, rational(1, 1));
    show_lp("relaxation", simplex_min(&lp));
    show_ilp("integers", ilp_min(&lp, DEFAULT_NODE_BUDGET));
    show_ilp("integers, one node", ilp_min(&lp, 1));

    // 2x = 3 has a rational solution but no integer one.
    let parity = RationalLP::new(vec![rational(1, 1)]).with_row(vec![rational(2, 1)], Sense::Eq, rational(3, 1));
    show_lp("parity relaxation", simplex_min(&parity));
    show_ilp("parity integers", ilp_min(&parity, DEFAULT_NODE_BUDGET));
}
