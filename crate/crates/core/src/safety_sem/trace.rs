use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::resources::{Action, Resource, Universe};

/// A finite sequence of observable actions.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Trace(pub Vec<Action>);

impl Trace {
    pub fn empty() -> Self {
        Trace(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn actions(&self) -> &[Action] {
        &self.0
    }

    pub fn push(&self, a: Action) -> Trace {
        let mut v = self.0.clone();
        v.push(a);
        Trace(v)
    }

    pub fn concat(&self, other: &[Action]) -> Trace {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        Trace(v)
    }

    /// `prefix` followed by this trace.
    pub fn concat_front(&self, prefix: &[Action]) -> Trace {
        let mut v = prefix.to_vec();
        v.extend(self.0.iter().cloned());
        Trace(v)
    }

    pub fn is_prefix_of(&self, other: &Trace) -> bool {
        other.0.starts_with(&self.0)
    }
}

impl From<Vec<Action>> for Trace {
    fn from(v: Vec<Action>) -> Self {
        Trace(v)
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" . ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("ε")
        } else {
            fmt::Display::fmt(self, f)
        }
    }
}

/// A prefix-closed set of traces containing ε.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TraceSet(BTreeSet<Trace>);

impl Default for TraceSet {
    fn default() -> Self {
        Self::unit()
    }
}

impl TraceSet {
    /// `{ε}`.
    pub fn unit() -> Self {
        TraceSet([Trace::empty()].into_iter().collect())
    }

    /// Builds the prefix closure of `traces` (always including ε).
    pub fn closure_of(traces: impl IntoIterator<Item = Trace>) -> Self {
        let mut s = Self::unit();
        for t in traces {
            s.insert(t);
        }
        s
    }

    /// Inserts `t` together with all of its prefixes.
    pub fn insert(&mut self, t: Trace) {
        for n in 1..=t.len() {
            self.0.insert(Trace(t.0[..n].to_vec()));
        }
    }

    pub fn contains(&self, t: &Trace) -> bool {
        self.0.contains(t)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Trace> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn union(&self, other: &TraceSet) -> TraceSet {
        TraceSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn is_subset(&self, other: &TraceSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn difference<'a>(&'a self, other: &'a TraceSet) -> impl Iterator<Item = &'a Trace> {
        self.0.difference(&other.0)
    }

    pub fn max_len(&self) -> usize {
        self.0.iter().map(Trace::len).max().unwrap_or(0)
    }

    pub fn truncate(&self, k: usize) -> TraceSet {
        TraceSet(self.0.iter().filter(|t| t.len() <= k).cloned().collect())
    }

    pub fn is_prefix_closed(&self) -> bool {
        self.0.contains(&Trace::empty())
            && self.0.iter().all(|t| t.is_empty() || self.0.contains(&Trace(t.0[..t.len() - 1].to_vec())))
    }

    pub fn into_inner(self) -> BTreeSet<Trace> {
        self.0
    }
}

impl fmt::Debug for TraceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// A table from every resource over a universe to a trace set, all at a
/// common depth bound.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Behavior {
    depth: usize,
    table: BTreeMap<Resource, TraceSet>,
}

impl Behavior {
    /// λσ.{ε}.
    pub fn unit(universe: &Universe, depth: usize) -> Self {
        Self::tabulate(universe, depth, |_| TraceSet::unit())
    }

    pub fn tabulate(universe: &Universe, depth: usize, mut f: impl FnMut(&Resource) -> TraceSet) -> Self {
        let table = universe.all_resources().into_iter().map(|r| {
            let t = f(&r).truncate(depth);
            (r, t)
        });
        Behavior { depth, table: table.collect() }
    }

    pub fn try_tabulate<E>(
        universe: &Universe,
        depth: usize,
        mut f: impl FnMut(&Resource) -> Result<TraceSet, E>,
    ) -> Result<Self, E> {
        let mut table = BTreeMap::new();
        for r in universe.all_resources() {
            let t = f(&r)?.truncate(depth);
            table.insert(r, t);
        }
        Ok(Behavior { depth, table })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// A table over the same resources with entries computed by `f`.
    pub fn map(&self, mut f: impl FnMut(&Resource) -> TraceSet) -> Behavior {
        let table = self.table.keys().map(|r| (r.clone(), f(r).truncate(self.depth))).collect();
        Behavior { depth: self.depth, table }
    }

    /// The trace set at `sigma`; `{ε}` for resources outside the table.
    pub fn at(&self, sigma: &Resource) -> TraceSet {
        self.table.get(sigma).cloned().unwrap_or_default()
    }

    pub fn get(&self, sigma: &Resource) -> Option<&TraceSet> {
        self.table.get(sigma)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Resource, &TraceSet)> {
        self.table.iter()
    }

    pub fn resources(&self) -> impl Iterator<Item = &Resource> {
        self.table.keys()
    }

    /// Pointwise inclusion.
    pub fn is_below(&self, other: &Behavior) -> bool {
        self.table.iter().all(|(r, t)| t.is_subset(&other.at(r)))
    }
}

impl fmt::Debug for Behavior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.table.iter()).finish()
    }
}
