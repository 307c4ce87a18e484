use std::collections::BTreeSet;

use super::{Ownership, Resource};
use crate::syntax::Chan;

/// σ̂: same domain, everything public.
pub fn public_lift(sigma: &Resource) -> Resource {
    sigma.domain().map(|c| (c.clone(), Ownership::Pub)).collect()
}

/// σ ∈ σ1 ∥ σ2.
pub fn check_separation(sigma: &Resource, s1: &Resource, s2: &Resource) -> bool {
    let union: BTreeSet<&Chan> = s1.domain().chain(s2.domain()).collect();
    let dom: BTreeSet<&Chan> = sigma.domain().collect();
    if union != dom {
        return false;
    }
    let side_ok = |mine: &Resource, other: &Resource| {
        mine.iter()
            .filter(|(_, o)| *o == Ownership::Pri)
            .all(|(c, _)| sigma.is_pri(c) && !other.contains(c))
    };
    side_ok(s1, s2) && side_ok(s2, s1)
}

/// The relation linking an operational resource, a denotational resource,
/// and the two component resources of a parallel composition.
pub fn check_invariant_rel(s_op: &Resource, s_den: &Resource, s1: &Resource, s2: &Resource) -> bool {
    if !check_separation(s_op, s1, s2) {
        return false;
    }
    let expected: Resource = s_op
        .iter()
        .filter(|(c, _)| !s1.is_pri(c) && !s2.is_pri(c))
        .map(|(c, o)| (c.clone(), o))
        .collect();
    *s_den == expected
}

/// Every pair (σ1, σ2) with σ ∈ σ1 ∥ σ2.
pub fn enumerate_separations(sigma: &Resource) -> BTreeSet<(Resource, Resource)> {
    // Per channel the options are independent: pub entries may sit on either
    // or both sides as pub; pri entries may sit on one side as pri or on both
    // sides as pub, or on one side only as pub.
    let mut out = vec![(Resource::empty(), Resource::empty())];
    for (c, o) in sigma.iter() {
        let mut choices: Vec<(Option<Ownership>, Option<Ownership>)> =
            vec![(Some(Ownership::Pub), None), (None, Some(Ownership::Pub)), (Some(Ownership::Pub), Some(Ownership::Pub))];
        if o == Ownership::Pri {
            choices.push((Some(Ownership::Pri), None));
            choices.push((None, Some(Ownership::Pri)));
        }
        let mut next = Vec::with_capacity(out.len() * choices.len());
        for (a, b) in &out {
            for (x, y) in &choices {
                let mut a = a.clone();
                let mut b = b.clone();
                if let Some(x) = x {
                    a.insert(c.clone(), *x);
                }
                if let Some(y) = y {
                    b.insert(c.clone(), *y);
                }
                next.push((a, b));
            }
        }
        out = next;
    }
    out.into_iter().collect()
}
