//! Semantic operators on behavior tables.

use std::collections::HashMap;

use super::{Behavior, Trace, TraceSet};
use crate::resources::{apply_action, dual, observe_action, public_lift, Action, Resource, Universe, Verdict};

/// The traces of `α ▷ B` at `sigma`, given `B` at the successor resource.
fn prefix_at(a: &Action, sigma: &Resource, k: usize, cont: impl FnOnce(&Resource, usize) -> TraceSet) -> TraceSet {
    let mut out = TraceSet::unit();
    match apply_action(a, sigma) {
        Verdict::Ok(s2) => {
            let obs = observe_action(a, sigma);
            let rest = cont(&s2, k.saturating_sub(obs.len()));
            for t in rest.iter() {
                let mut full = obs.clone();
                full.extend(t.actions().iter().cloned());
                full.truncate(k);
                out.insert(Trace(full));
            }
        }
        Verdict::Impermissible if k > 0 => out.insert(Trace(vec![Action::Fault])),
        _ => {}
    }
    out
}

/// `α ▷ B`.
pub fn prefix_behavior(a: &Action, b: &Behavior) -> Behavior {
    let k = b.depth();
    b.map(|sigma| prefix_at(a, sigma, k, |s2, r| b.at(s2).truncate(r)))
}

/// Pointwise union; the empty join is `λσ.{ε}`.
pub fn join_behaviors<'a>(bs: impl IntoIterator<Item = &'a Behavior>, universe: &Universe, depth: usize) -> Behavior {
    let bs: Vec<&Behavior> = bs.into_iter().collect();
    Behavior::tabulate(universe, depth, |sigma| {
        bs.iter().fold(TraceSet::unit(), |acc, b| acc.union(&b.at(sigma)))
    })
}

struct Interleaver<'a> {
    t: &'a [Action],
    u: &'a [Action],
    memo: HashMap<(usize, usize, Resource, usize), TraceSet>,
}

impl Interleaver<'_> {
    fn at(&mut self, i: usize, j: usize, sigma: &Resource, k: usize) -> TraceSet {
        if k == 0 || (i == self.t.len() && j == self.u.len()) {
            return TraceSet::unit();
        }
        let key = (i, j, sigma.clone(), k);
        if let Some(r) = self.memo.get(&key) {
            return r.clone();
        }
        let mut out = TraceSet::unit();
        let (t, u) = (self.t, self.u);
        if let Some(a) = t.get(i) {
            let r = prefix_at(a, sigma, k, |s2, r| self.at(i + 1, j, s2, r));
            out = out.union(&r);
        }
        if let Some(b) = u.get(j) {
            let r = prefix_at(b, sigma, k, |s2, r| self.at(i, j + 1, s2, r));
            out = out.union(&r);
        }
        if let (Some(a), Some(b)) = (t.get(i), u.get(j)) {
            if dual(a).as_ref() == Some(b) {
                let r = self.at(i + 1, j + 1, sigma, k);
                out = out.union(&r);
            }
        }
        self.memo.insert(key, out.clone());
        out
    }
}

fn interleave_at(t: &Trace, u: &Trace, sigma: &Resource, k: usize) -> TraceSet {
    Interleaver { t: t.actions(), u: u.actions(), memo: HashMap::new() }.at(0, 0, sigma, k)
}

/// `t ∥ u`. Bound sends are stored as their two primitive actions, so the
/// allocation is re-executed against whatever resource the interleaving
/// reaches.
pub fn interleave_traces(t: &Trace, u: &Trace, universe: &Universe, depth: usize) -> Behavior {
    Behavior::tabulate(universe, depth, |sigma| interleave_at(t, u, sigma, depth))
}

/// `B1 ∥ B2`: components run at the public lifting, their interleavings
/// are evaluated at the composite resource.
pub fn parallel_behaviors(b1: &Behavior, b2: &Behavior) -> Behavior {
    let k = b1.depth().min(b2.depth());
    b1.map(|sigma| {
        let lift = public_lift(sigma);
        let mut out = TraceSet::unit();
        let (l, r) = (b1.at(&lift), b2.at(&lift));
        for t1 in l.iter() {
            for t2 in r.iter() {
                out = out.union(&interleave_at(t1, t2, sigma, k));
            }
        }
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resources::Ownership::{Pri, Pub};
    use crate::syntax::Chan;

    fn ch(s: &str) -> Chan {
        Chan::new(s)
    }

    fn u() -> Universe {
        Universe::new(["c", "d"])
    }

    #[test]
    fn fault_prefix() {
        let b = prefix_behavior(&Action::Fault, &Behavior::unit(&u(), 3));
        for (_, t) in b.iter() {
            assert_eq!(*t, TraceSet::closure_of([Trace(vec![Action::Fault])]));
        }
    }

    #[test]
    fn send_on_private_subject_is_dropped() {
        let b = prefix_behavior(&Action::Send(ch("c"), ch("c")), &Behavior::unit(&u(), 3));
        assert_eq!(b.at(&Resource::from_pairs([("c", Pri)])), TraceSet::unit());
        let sigma = Resource::from_pairs([("c", Pub)]);
        assert!(b.at(&sigma).contains(&Trace(vec![Action::Send(ch("c"), ch("c"))])));
    }

    #[test]
    fn alloc_on_owned_channel_is_impossible() {
        let inner = prefix_behavior(&Action::Fault, &Behavior::unit(&u(), 3));
        let b = prefix_behavior(&Action::Alloc(ch("c")), &inner);
        assert_eq!(b.at(&Resource::from_pairs([("c", Pub)])), TraceSet::unit());
        assert_eq!(b.at(&Resource::empty()).len(), 2);
    }

    #[test]
    fn empty_join_is_unit() {
        assert_eq!(join_behaviors([], &u(), 2), Behavior::unit(&u(), 2));
    }

    #[test]
    fn dual_interleaving_under_private_channel() {
        let t = Trace(vec![Action::Send(ch("d"), ch("c"))]);
        let v = Trace(vec![Action::Recv(ch("d"), ch("c"))]);
        let b = interleave_traces(&t, &v, &u(), 3);
        assert_eq!(b.at(&Resource::from_pairs([("c", Pub), ("d", Pri)])), TraceSet::unit());
        let both = Resource::from_pairs([("c", Pub), ("d", Pub)]);
        assert_eq!(b.at(&both).len(), 5);
    }
}
