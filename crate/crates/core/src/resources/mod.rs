//! The resource model: ownership maps, actions and their resource semantics,
//! observables, public lifting and parallel separation.

mod action;
mod literal;
mod separation;

use std::collections::BTreeMap;
use std::fmt;

use crate::syntax::Chan;

pub use action::{apply_action, dual, observe_action, Action, Dir, DirSet, Polarity, Verdict};
pub use literal::{parse_resource, parse_universe};
pub use separation::{check_invariant_rel, check_separation, enumerate_separations, public_lift};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ownership {
    Pub,
    Pri,
}

impl fmt::Display for Ownership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ownership::Pub => "pub",
            Ownership::Pri => "pri",
        })
    }
}

/// A finite partial map from channels to ownership.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Resource(BTreeMap<Chan, Ownership>);

impl Resource {
    pub fn empty() -> Self {
        Resource(BTreeMap::new())
    }

    pub fn from_pairs<S: AsRef<str>>(pairs: impl IntoIterator<Item = (S, Ownership)>) -> Self {
        Resource(pairs.into_iter().map(|(c, o)| (Chan::new(c), o)).collect())
    }

    pub fn get(&self, c: &Chan) -> Option<Ownership> {
        self.0.get(c).copied()
    }

    pub fn contains(&self, c: &Chan) -> bool {
        self.0.contains_key(c)
    }

    pub fn is_pub(&self, c: &Chan) -> bool {
        self.get(c) == Some(Ownership::Pub)
    }

    pub fn is_pri(&self, c: &Chan) -> bool {
        self.get(c) == Some(Ownership::Pri)
    }

    /// `self[c ↦ o]`.
    pub fn with(&self, c: &Chan, o: Ownership) -> Self {
        let mut next = self.clone();
        next.0.insert(c.clone(), o);
        next
    }

    pub fn without(&self, c: &Chan) -> Self {
        let mut next = self.clone();
        next.0.remove(c);
        next
    }

    pub fn insert(&mut self, c: Chan, o: Ownership) {
        self.0.insert(c, o);
    }

    pub fn domain(&self) -> impl Iterator<Item = &Chan> {
        self.0.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Chan, Ownership)> {
        self.0.iter().map(|(c, o)| (c, *o))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when `self` agrees with `other` on all of `self`'s domain.
    pub fn is_submap_of(&self, other: &Resource) -> bool {
        self.iter().all(|(c, o)| other.get(c) == Some(o))
    }
}

impl FromIterator<(Chan, Ownership)> for Resource {
    fn from_iter<I: IntoIterator<Item = (Chan, Ownership)>>(iter: I) -> Self {
        Resource(iter.into_iter().collect())
    }
}

impl fmt::Display for Resource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (c, o)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}: {o}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Resource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The finite set of channel constants every quantification ranges over.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Universe(Vec<Chan>);

impl Universe {
    pub fn new<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Self {
        Self::from_chans(names.into_iter().map(Chan::new))
    }

    pub fn from_chans(chans: impl IntoIterator<Item = Chan>) -> Self {
        let mut v: Vec<Chan> = chans.into_iter().collect();
        v.sort();
        v.dedup();
        Universe(v)
    }

    pub fn chans(&self) -> &[Chan] {
        &self.0
    }

    pub fn contains(&self, c: &Chan) -> bool {
        self.0.binary_search(c).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every resource whose domain lies inside the universe (3^n of them).
    pub fn all_resources(&self) -> Vec<Resource> {
        let mut out = vec![Resource::empty()];
        for c in &self.0 {
            let mut next = Vec::with_capacity(out.len() * 3);
            for r in &out {
                next.push(r.clone());
                next.push(r.with(c, Ownership::Pub));
                next.push(r.with(c, Ownership::Pri));
            }
            out = next;
        }
        out.sort();
        out
    }

    /// All resources over the universe in which every channel is owned.
    pub fn full_resources(&self) -> Vec<Resource> {
        self.all_resources().into_iter().filter(|r| r.len() == self.len()).collect()
    }

    pub fn contains_resource(&self, r: &Resource) -> bool {
        r.domain().all(|c| self.contains(c))
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        f.write_str(&names.join(","))
    }
}
