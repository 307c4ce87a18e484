use std::collections::BTreeSet;
use std::fmt;

use super::{Ownership, Resource};
use crate::syntax::Chan;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    Send,
    Recv,
}

impl Polarity {
    pub fn flip(self) -> Self {
        match self {
            Polarity::Send => Polarity::Recv,
            Polarity::Recv => Polarity::Send,
        }
    }
}

/// A channel together with a polarity, written `c!` or `c?`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dir {
    pub chan: Chan,
    pub pol: Polarity,
}

impl Dir {
    pub fn send(c: &Chan) -> Self {
        Dir { chan: c.clone(), pol: Polarity::Send }
    }

    pub fn recv(c: &Chan) -> Self {
        Dir { chan: c.clone(), pol: Polarity::Recv }
    }

    pub fn reversed(&self) -> Self {
        Dir { chan: self.chan.clone(), pol: self.pol.flip() }
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pol {
            Polarity::Send => write!(f, "{}!", self.chan),
            Polarity::Recv => write!(f, "{}?", self.chan),
        }
    }
}

impl fmt::Debug for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite set of directions (Δ).
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DirSet(BTreeSet<Dir>);

impl DirSet {
    pub fn empty() -> Self {
        DirSet(BTreeSet::new())
    }

    pub fn insert(&mut self, d: Dir) {
        self.0.insert(d);
    }

    pub fn iter(&self) -> impl Iterator<Item = &Dir> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, d: &Dir) -> bool {
        self.0.contains(d)
    }

    pub fn is_subset(&self, other: &DirSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &DirSet) -> DirSet {
        DirSet(self.0.union(&other.0).cloned().collect())
    }

    /// Δ̄: every polarity flipped.
    pub fn reversed(&self) -> DirSet {
        self.iter().map(Dir::reversed).collect()
    }

    /// The merge condition for two blocked components: Δ̄ ∩ Δ′ = ∅.
    pub fn compatible(&self, other: &DirSet) -> bool {
        self.iter().all(|d| !other.contains(&d.reversed()))
    }

    pub fn channels(&self) -> impl Iterator<Item = &Chan> {
        self.0.iter().map(|d| &d.chan)
    }

    /// Δ restricted to channels public in `sigma`.
    pub fn project(&self, sigma: &Resource) -> DirSet {
        self.iter().filter(|d| sigma.is_pub(&d.chan)).cloned().collect()
    }
}

impl FromIterator<Dir> for DirSet {
    fn from_iter<I: IntoIterator<Item = Dir>>(iter: I) -> Self {
        DirSet(iter.into_iter().collect())
    }
}

impl fmt::Display for DirSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, d) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for DirSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Action {
    Send(Chan, Chan),
    Recv(Chan, Chan),
    Alloc(Chan),
    Tau,
    Fault,
    Block(DirSet),
}

impl Action {
    pub fn is_communication(&self) -> bool {
        matches!(self, Action::Send(..) | Action::Recv(..))
    }

    /// The direction of a communication action.
    pub fn direction(&self) -> Option<Dir> {
        match self {
            Action::Send(c, _) => Some(Dir::send(c)),
            Action::Recv(c, _) => Some(Dir::recv(c)),
            _ => None,
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Send(c, d) => write!(f, "{c}!{d}"),
            Action::Recv(c, d) => write!(f, "{c}?{d}"),
            Action::Alloc(c) => write!(f, "nu {c}"),
            Action::Tau => f.write_str("tau"),
            Action::Fault => f.write_str("FAULT"),
            Action::Block(dirs) => write!(f, "delta{dirs}"),
        }
    }
}

impl fmt::Debug for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Outcome of running an action against a resource.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Ok(Resource),
    /// The action uses an unowned channel (⊤).
    Impermissible,
    /// The action cannot happen under these resources (⊥).
    Impossible,
}

pub fn dual(a: &Action) -> Option<Action> {
    match a {
        Action::Send(c, d) => Some(Action::Recv(c.clone(), d.clone())),
        Action::Recv(c, d) => Some(Action::Send(c.clone(), d.clone())),
        _ => None,
    }
}

pub fn apply_action(a: &Action, sigma: &Resource) -> Verdict {
    match a {
        Action::Send(c, d) => {
            if !sigma.contains(c) || !sigma.contains(d) {
                Verdict::Impermissible
            } else if sigma.is_pub(c) {
                Verdict::Ok(sigma.with(d, Ownership::Pub))
            } else {
                Verdict::Impossible
            }
        }
        Action::Recv(c, d) => {
            if !sigma.contains(c) {
                Verdict::Impermissible
            } else if sigma.is_pub(c) && !sigma.is_pri(d) {
                Verdict::Ok(sigma.with(d, Ownership::Pub))
            } else {
                Verdict::Impossible
            }
        }
        Action::Alloc(c) => {
            if sigma.contains(c) {
                Verdict::Impossible
            } else {
                Verdict::Ok(sigma.with(c, Ownership::Pri))
            }
        }
        Action::Tau => Verdict::Ok(sigma.clone()),
        Action::Fault => Verdict::Impermissible,
        Action::Block(dirs) => {
            if dirs.channels().all(|c| sigma.contains(c)) {
                Verdict::Ok(sigma.clone())
            } else {
                Verdict::Impermissible
            }
        }
    }
}

/// |α|σ as a (possibly empty) sequence of actions.
pub fn observe_action(a: &Action, sigma: &Resource) -> Vec<Action> {
    match a {
        Action::Tau | Action::Alloc(_) => Vec::new(),
        Action::Send(_, d) if sigma.is_pri(d) => vec![Action::Alloc(d.clone()), a.clone()],
        Action::Block(dirs) => vec![Action::Block(dirs.project(sigma))],
        _ => vec![a.clone()],
    }
}
