use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::resources::{DirSet, Resource, Universe};
use crate::safety_sem::Trace;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Terminal {
    Blocked(DirSet),
    Faulted,
    /// Cut off by the depth bound while still able to continue.
    Truncated,
}

impl fmt::Display for Terminal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Terminal::Blocked(d) => write!(f, "delta{d}"),
            Terminal::Faulted => f.write_str("FAULT"),
            Terminal::Truncated => f.write_str("..."),
        }
    }
}

/// A complete liveness trace: non-terminating actions, then a terminal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LTrace {
    pub actions: Trace,
    pub terminal: Terminal,
}

impl LTrace {
    pub fn new(actions: impl Into<Trace>, terminal: Terminal) -> Self {
        LTrace { actions: actions.into(), terminal }
    }

    pub fn blocked(actions: impl Into<Trace>, dirs: DirSet) -> Self {
        Self::new(actions, Terminal::Blocked(dirs))
    }

    pub fn faulted(actions: impl Into<Trace>) -> Self {
        Self::new(actions, Terminal::Faulted)
    }

    pub fn truncated(actions: impl Into<Trace>) -> Self {
        Self::new(actions, Terminal::Truncated)
    }
}

impl fmt::Display for LTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.actions.is_empty() {
            write!(f, "{}", self.terminal)
        } else {
            write!(f, "{} . {}", self.actions, self.terminal)
        }
    }
}

impl fmt::Debug for LTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A set of liveness traces, plus the prefixes at which the bounded
/// exploration could not reach a verdict.
///
/// Sets are kept normalized: an entry extending the action prefix of a
/// `Faulted` entry is dropped, since faulting already permits everything
/// after that point.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LTraceSet {
    traces: BTreeSet<LTrace>,
    unknown: BTreeSet<Trace>,
}

impl LTraceSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_traces(traces: impl IntoIterator<Item = LTrace>) -> Self {
        let mut s = Self::new();
        for t in traces {
            s.traces.insert(t);
        }
        s.normalize();
        s
    }

    pub fn insert(&mut self, t: LTrace) {
        self.traces.insert(t);
        self.normalize();
    }

    /// Inserts without normalizing; call [`LTraceSet::normalize`] afterwards.
    pub(crate) fn insert_raw(&mut self, t: LTrace) {
        self.traces.insert(t);
    }

    pub fn mark_unknown(&mut self, prefix: Trace) {
        self.unknown.insert(prefix);
    }

    pub fn normalize(&mut self) {
        let faulted: Vec<Trace> =
            self.traces.iter().filter(|t| t.terminal == Terminal::Faulted).map(|t| t.actions.clone()).collect();
        if faulted.is_empty() {
            return;
        }
        self.traces.retain(|t| {
            !faulted
                .iter()
                .any(|f| f.is_prefix_of(&t.actions) && !(t.terminal == Terminal::Faulted && *f == t.actions))
        });
        self.unknown.retain(|u| !faulted.iter().any(|f| f.is_prefix_of(u)));
    }

    pub fn traces(&self) -> &BTreeSet<LTrace> {
        &self.traces
    }

    pub fn unknown(&self) -> &BTreeSet<Trace> {
        &self.unknown
    }

    pub fn has_unknown(&self) -> bool {
        !self.unknown.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &LTrace> {
        self.traces.iter()
    }

    pub fn len(&self) -> usize {
        self.traces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.traces.is_empty()
    }

    pub fn contains(&self, t: &LTrace) -> bool {
        self.traces.contains(t)
    }

    pub fn union(&self, other: &LTraceSet) -> LTraceSet {
        let mut s = LTraceSet {
            traces: self.traces.union(&other.traces).cloned().collect(),
            unknown: self.unknown.union(&other.unknown).cloned().collect(),
        };
        s.normalize();
        s
    }

    /// The single-trace set `{↯}` at the empty prefix.
    pub fn catastrophic() -> Self {
        Self::from_traces([LTrace::faulted(Trace::empty())])
    }

    /// Equality that refuses to compare sets with undecided prefixes.
    pub fn try_eq(&self, other: &LTraceSet) -> Result<bool> {
        if self.has_unknown() || other.has_unknown() {
            return Err(Error::Incomparable("liveness trace set has undecided prefixes".into()));
        }
        Ok(self.traces == other.traces)
    }
}

impl fmt::Debug for LTraceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.traces.iter()).finish()?;
        if !self.unknown.is_empty() {
            write!(f, " unknown at {:?}", self.unknown)?;
        }
        Ok(())
    }
}

/// A table from every resource over a universe to a liveness trace set.
#[derive(Clone, PartialEq, Eq)]
pub struct LBehavior {
    depth: usize,
    table: BTreeMap<Resource, LTraceSet>,
}

impl LBehavior {
    pub fn tabulate(universe: &Universe, depth: usize, mut f: impl FnMut(&Resource) -> LTraceSet) -> Self {
        let table = universe.all_resources().into_iter().map(|r| {
            let s = f(&r);
            (r, s)
        });
        LBehavior { depth, table: table.collect() }
    }

    pub fn try_tabulate(
        universe: &Universe,
        depth: usize,
        mut f: impl FnMut(&Resource) -> Result<LTraceSet>,
    ) -> Result<Self> {
        let mut table = BTreeMap::new();
        for r in universe.all_resources() {
            table.insert(r.clone(), f(&r)?);
        }
        Ok(LBehavior { depth, table })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// A table over the same resources with entries computed by `f`.
    pub fn map(&self, mut f: impl FnMut(&Resource) -> LTraceSet) -> LBehavior {
        let table = self.table.keys().map(|r| (r.clone(), f(r))).collect();
        LBehavior { depth: self.depth, table }
    }

    pub fn at(&self, sigma: &Resource) -> LTraceSet {
        self.table.get(sigma).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Resource, &LTraceSet)> {
        self.table.iter()
    }
}

impl fmt::Debug for LBehavior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.table.iter()).finish()
    }
}
