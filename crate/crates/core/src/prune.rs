//! Sign analysis: drop places that can never be marked and transitions that
//! can never fire.

use std::collections::{BTreeSet, VecDeque};

use crate::instance::{Constraint, Instance, TargetSpec};
use crate::net::{Marking, PetriNet, Transition, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PruneVerdict {
    Pruned,
    /// The target requires tokens in a place that can never be marked.
    ImmediatelyUnreachable,
}

#[derive(Debug, Clone)]
pub struct PruneResult {
    /// Old place index to new index, `None` when removed.
    pub kept_places: Vec<Option<usize>>,
    /// Old transition index to new index, `None` when removed.
    pub kept_transitions: Vec<Option<usize>>,
    pub instance: Instance,
    pub verdict: PruneVerdict,
}

impl PruneResult {
    /// New transition index to old index.
    pub fn original_transitions(&self) -> Vec<usize> {
        let mut back = vec![0; self.instance.net.num_transitions()];
        for (old, new) in self.kept_transitions.iter().enumerate() {
            if let Some(new) = new {
                back[*new] = old;
            }
        }
        back
    }

    /// Maps a firing sequence of the pruned net back to the original net.
    pub fn lift_sequence(&self, seq: &[usize]) -> Vec<usize> {
        let back = self.original_transitions();
        seq.iter().map(|&t| back[t]).collect()
    }

    /// Re-expresses a witness of the pruned net over the original transitions.
    pub fn lift_witness(&self, w: &Witness) -> Witness {
        let sequence = self.lift_sequence(&w.sequence);
        let mut parikh = vec![0; self.kept_transitions.len()];
        for &t in &sequence {
            parikh[t] += 1;
        }
        Witness {
            sequence,
            total_weight: w.total_weight.clone(),
            parikh,
        }
    }

    pub fn removed_places(&self) -> impl Iterator<Item = usize> + '_ {
        self.kept_places
            .iter()
            .enumerate()
            .filter(|(_, k)| k.is_none())
            .map(|(p, _)| p)
    }
}

/// Least set of places containing `initially_marked` and closed under "every
/// input of `t` is markable ⇒ every output of `t` is markable".
pub fn sign_analysis(net: &PetriNet, initially_marked: &BTreeSet<usize>) -> BTreeSet<usize> {
    let n = net.num_places();
    let mut by_input: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut missing = vec![0usize; net.num_transitions()];
    for (t, tr) in net.transitions().iter().enumerate() {
        for p in tr.inputs() {
            by_input[p].push(t);
            missing[t] += 1;
        }
    }

    let mut marked = vec![false; n];
    let mut queue = VecDeque::new();
    for &p in initially_marked {
        if !marked[p] {
            marked[p] = true;
            queue.push_back(p);
        }
    }
    let fire = |t: usize, marked: &mut Vec<bool>, queue: &mut VecDeque<usize>| {
        for q in net.transitions()[t].outputs() {
            if !marked[q] {
                marked[q] = true;
                queue.push_back(q);
            }
        }
    };
    for t in 0..net.num_transitions() {
        if missing[t] == 0 {
            fire(t, &mut marked, &mut queue);
        }
    }
    while let Some(p) = queue.pop_front() {
        for &t in &by_input[p] {
            missing[t] -= 1;
            if missing[t] == 0 {
                fire(t, &mut marked, &mut queue);
            }
        }
    }
    (0..n).filter(|&p| marked[p]).collect()
}

/// Removes unmarkable places and the transitions guarded by them.
///
/// Run this after [`crate::instance::desugar_init`]: upward-closed places
/// are not treated specially here.
pub fn prune_instance(inst: &Instance) -> PruneResult {
    let net = &inst.net;
    let initially: BTreeSet<usize> = inst.init.support().collect();
    let markable = sign_analysis(net, &initially);

    let mut kept_places = vec![None; net.num_places()];
    for (new, &old) in markable.iter().enumerate() {
        kept_places[old] = Some(new);
    }

    let mut verdict = PruneVerdict::Pruned;
    for (p, c) in inst.target.constraints.iter().enumerate() {
        if kept_places[p].is_none() && c.bound > 0 {
            verdict = PruneVerdict::ImmediatelyUnreachable;
        }
    }

    let project = |v: &[u64]| -> Vec<u64> { markable.iter().map(|&p| v[p]).collect() };

    let mut kept_transitions = vec![None; net.num_transitions()];
    let mut transitions = Vec::new();
    for (t, tr) in net.transitions().iter().enumerate() {
        if tr.inputs().all(|p| kept_places[p].is_some()) {
            debug_assert!(tr.outputs().all(|p| kept_places[p].is_some()));
            kept_transitions[t] = Some(transitions.len());
            transitions.push(Transition {
                id: tr.id.clone(),
                guard: project(&tr.guard),
                produce: project(&tr.produce),
                weight: tr.weight.clone(),
            });
        }
    }

    let places = markable.iter().map(|&p| net.places()[p].clone()).collect();
    let pruned_net = PetriNet::new(net.name(), places, transitions)
        .expect("a sub-net of a valid net is valid");
    let target = TargetSpec {
        constraints: markable
            .iter()
            .map(|&p| inst.target.constraints[p].clone())
            .collect::<Vec<Constraint>>(),
    };
    let init_upward = inst
        .init_upward
        .iter()
        .filter_map(|&p| kept_places[p])
        .collect();
    let instance = Instance {
        net: pruned_net,
        init: Marking(project(inst.init.counts())),
        init_upward,
        target,
    };
    PruneResult {
        kept_places,
        kept_transitions,
        instance,
        verdict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::parse_instance;
    use crate::net::tests::counter;

    #[test]
    fn counter_fixpoint_from_nothing() {
        assert_eq!(sign_analysis(&counter(), &BTreeSet::new()), BTreeSet::from([0, 1]));
    }

    #[test]
    fn place_without_producer_stays_unmarked() {
        let inst = parse_instance("net x\nplaces: a b\ninit: a=1\ntransition t\n  consume a:1\n  produce a:1\n").unwrap();
        assert_eq!(sign_analysis(&inst.net, &BTreeSet::from([0])), BTreeSet::from([0]));
    }

    #[test]
    fn full_set_is_a_fixpoint() {
        let all = BTreeSet::from([0, 1]);
        assert_eq!(sign_analysis(&counter(), &all), all);
    }

    #[test]
    fn counter_is_unchanged() {
        let inst = parse_instance(
            "net counter\nplaces: p1 p2\ntransition t1\n  produce p1:1\ntransition t2\n  consume p1:1\n  produce p1:1 p2:1\ntransition t3\n  consume p1:1\ntarget: p1=0 p2=1\n",
        )
        .unwrap();
        let res = prune_instance(&inst);
        assert_eq!(res.verdict, PruneVerdict::Pruned);
        assert_eq!(res.instance, inst);
        assert_eq!(res.kept_places, vec![Some(0), Some(1)]);
    }

    #[test]
    fn unmarkable_target_place() {
        let inst = parse_instance(
            "net x\nplaces: a b\ninit: a=1\ntransition t\n  consume a:1\n  produce a:1\ntarget: b>=1\n",
        )
        .unwrap();
        assert_eq!(prune_instance(&inst).verdict, PruneVerdict::ImmediatelyUnreachable);
    }

    #[test]
    fn zero_constraint_on_removed_place_is_dropped() {
        let inst = parse_instance(
            "net x\nplaces: a b\ninit: a=1\ntransition t\n  consume a:1\n  produce a:1\ntarget: a>=1 b=0\n",
        )
        .unwrap();
        let res = prune_instance(&inst);
        assert_eq!(res.verdict, PruneVerdict::Pruned);
        assert_eq!(res.instance.net.num_places(), 1);
        assert_eq!(res.instance.net.num_transitions(), 1);
        assert_eq!(res.instance.target.constraints, vec![Constraint::geq(1)]);
        assert_eq!(res.kept_places, vec![Some(0), None]);
    }

    #[test]
    fn guarded_transitions_are_removed_and_witness_lifts() {
        let inst = parse_instance(
            "net x\nplaces: a b c\ninit: a=1\n\
             transition dead\n  consume b:1\n  produce c:1\n\
             transition go\n  consume a:1\n  produce c:1\n\
             target: c=1\n",
        )
        .unwrap();
        let res = prune_instance(&inst);
        assert_eq!(res.kept_transitions, vec![None, Some(0)]);
        assert_eq!(res.kept_places, vec![Some(0), None, Some(1)]);
        assert_eq!(res.lift_sequence(&[0]), vec![1]);
        let (end, _) = inst.net.replay(&inst.init, &res.lift_sequence(&[0])).unwrap();
        assert!(inst.target.is_satisfied_by(&end));
    }
}
