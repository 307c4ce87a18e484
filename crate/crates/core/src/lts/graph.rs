//! Lazily expanded observation graphs and the extraction of bounded trace
//! sets from them.
//!
//! Both semantics are presented as graphs whose edges carry observable
//! labels. Safety traces are the labels of finite paths (plus a final `↯`
//! for fault edges); liveness traces are the labels of complete paths,
//! ending in a fault or blocking edge, or running forever. A reachable
//! cycle of silent edges is divergence.

use std::cell::{Cell, RefCell};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;
use std::rc::Rc;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::error::{Error, Result};
use crate::liveness_sem::{LTrace, LTraceSet};
use crate::resources::{Action, DirSet};
use crate::safety_sem::{Trace, TraceSet};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Edge<N> {
    /// An unobservable step.
    Silent(N),
    /// An observable action. Bound sends appear as an `Alloc` edge into an
    /// intermediate node followed by the `Send` edge.
    Act(Action, N),
    Fault,
    Blocked(DirSet),
}

#[derive(Debug)]
pub(crate) struct Expansion<N> {
    pub edges: Vec<Edge<N>>,
    /// False when some edges may be missing because a nested analysis
    /// ran out of budget.
    pub complete: bool,
}

pub(crate) trait Lts {
    type Node: Clone + Eq + Hash + Ord + Debug;

    fn edges(&self, n: &Self::Node) -> Result<Rc<Expansion<Self::Node>>>;

    /// Number of distinct nodes expanded so far.
    fn expanded(&self) -> usize;
}

/// Memo table for edge expansions.
pub(crate) struct Memo<N> {
    table: RefCell<HashMap<N, Rc<Expansion<N>>>>,
    count: Cell<usize>,
}

impl<N: Clone + Eq + Hash> Memo<N> {
    pub fn new() -> Self {
        Memo { table: RefCell::new(HashMap::new()), count: Cell::new(0) }
    }

    pub fn get_or_try(
        &self,
        n: &N,
        compute: impl FnOnce() -> Result<Expansion<N>>,
    ) -> Result<Rc<Expansion<N>>> {
        if let Some(e) = self.table.borrow().get(n) {
            return Ok(e.clone());
        }
        let e = Rc::new(compute()?);
        self.table.borrow_mut().insert(n.clone(), e.clone());
        self.count.set(self.count.get() + 1);
        Ok(e)
    }

    pub fn len(&self) -> usize {
        self.count.get()
    }
}

fn budget_check<L: Lts>(lts: &L, start: usize, budget: usize) -> Result<()> {
    if lts.expanded() - start > budget {
        Err(Error::BudgetExhausted { budget })
    } else {
        Ok(())
    }
}

fn closure<L: Lts>(
    lts: &L,
    seeds: impl IntoIterator<Item = L::Node>,
    start: usize,
    budget: usize,
) -> Result<BTreeSet<L::Node>> {
    let mut seen: BTreeSet<L::Node> = BTreeSet::new();
    let mut work: Vec<L::Node> = seeds.into_iter().collect();
    while let Some(n) = work.pop() {
        if seen.contains(&n) {
            continue;
        }
        let exp = lts.edges(&n)?;
        budget_check(lts, start, budget)?;
        for e in &exp.edges {
            if let Edge::Silent(m) = e {
                if !seen.contains(m) {
                    work.push(m.clone());
                }
            }
        }
        seen.insert(n);
    }
    Ok(seen)
}

/// Every safety trace of observable length at most `k` from `start`.
/// Fails if more than `budget` new nodes must be expanded.
pub(crate) fn safety_traces<L: Lts>(lts: &L, start: &L::Node, k: usize, budget: usize) -> Result<TraceSet> {
    let base = lts.expanded();
    let mut out = TraceSet::unit();
    let mut stack = vec![(closure(lts, [start.clone()], base, budget)?, Trace::empty())];
    while let Some((states, t)) = stack.pop() {
        if t.len() >= k {
            continue;
        }
        let mut groups: BTreeMap<Action, BTreeSet<L::Node>> = BTreeMap::new();
        let mut fault = false;
        for n in &states {
            for e in &lts.edges(n)?.edges {
                match e {
                    Edge::Act(a, m) => {
                        groups.entry(a.clone()).or_default().insert(m.clone());
                    }
                    Edge::Fault => fault = true,
                    Edge::Silent(_) | Edge::Blocked(_) => {}
                }
            }
        }
        if fault {
            out.insert(t.push(Action::Fault));
        }
        for (a, targets) in groups {
            let next = closure(lts, targets, base, budget)?;
            let t2 = t.push(a);
            out.insert(t2.clone());
            stack.push((next, t2));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Tri {
    Yes,
    Maybe,
    No,
}

/// The part of a graph reachable from a start node, explored up to a
/// budget, with three-valued liveness and divergence per node.
pub(crate) struct Region<N> {
    pub nodes: Vec<N>,
    pub index: HashMap<N, usize>,
    /// `None` for frontier nodes that were reached but not expanded.
    pub exp: Vec<Option<Rc<Expansion<N>>>>,
    pub live: Vec<Tri>,
    pub diverge: Vec<Tri>,
}

impl<N: Clone + Eq + Hash + Ord + Debug> Region<N> {
    pub fn explore<L: Lts<Node = N>>(lts: &L, start: &N, budget: usize) -> Result<Self> {
        let mut nodes = vec![start.clone()];
        let mut index: HashMap<N, usize> = [(start.clone(), 0)].into_iter().collect();
        let mut exp: Vec<Option<Rc<Expansion<N>>>> = vec![None];
        let mut queue: VecDeque<usize> = [0].into_iter().collect();
        let mut expanded = 0usize;
        while let Some(i) = queue.pop_front() {
            if expanded >= budget {
                break;
            }
            let e = lts.edges(&nodes[i])?;
            expanded += 1;
            for edge in &e.edges {
                if let Edge::Silent(m) | Edge::Act(_, m) = edge {
                    if !index.contains_key(m) {
                        index.insert(m.clone(), nodes.len());
                        nodes.push(m.clone());
                        exp.push(None);
                        queue.push_back(nodes.len() - 1);
                    }
                }
            }
            exp[i] = Some(e);
        }
        let mut region = Region { nodes, index, exp, live: Vec::new(), diverge: Vec::new() };
        region.analyze();
        Ok(region)
    }

    fn open(&self, i: usize) -> bool {
        self.exp[i].as_ref().is_none_or(|e| !e.complete)
    }

    fn complete(&self, i: usize) -> bool {
        !self.open(i)
    }

    /// Successor indices. With `certain`, edges of incomplete nodes are
    /// ignored since they may not exist.
    fn successors(&self, i: usize, silent_only: bool, certain: bool) -> Vec<usize> {
        let Some(e) = &self.exp[i] else { return Vec::new() };
        if certain && !e.complete {
            return Vec::new();
        }
        e.edges
            .iter()
            .filter_map(|edge| match edge {
                Edge::Silent(m) => Some(self.index[m]),
                Edge::Act(_, m) if !silent_only => Some(self.index[m]),
                _ => None,
            })
            .collect()
    }

    fn on_cycle(&self, silent_only: bool, certain: bool) -> Vec<bool> {
        let mut g: DiGraph<(), ()> = DiGraph::new();
        let ids: Vec<NodeIndex> = (0..self.nodes.len()).map(|_| g.add_node(())).collect();
        let mut cyclic = vec![false; self.nodes.len()];
        for i in 0..self.nodes.len() {
            for j in self.successors(i, silent_only, certain) {
                if i == j {
                    cyclic[i] = true;
                }
                g.add_edge(ids[i], ids[j], ());
            }
        }
        for scc in tarjan_scc(&g) {
            if scc.len() > 1 {
                for n in scc {
                    cyclic[n.index()] = true;
                }
            }
        }
        cyclic
    }

    fn backward(&self, seeds: &[bool], silent_only: bool, certain: bool) -> Vec<bool> {
        let n = self.nodes.len();
        let mut preds = vec![Vec::new(); n];
        for i in 0..n {
            for j in self.successors(i, silent_only, certain) {
                preds[j].push(i);
            }
        }
        let mut mark = seeds.to_vec();
        let mut work: Vec<usize> = (0..n).filter(|&i| seeds[i]).collect();
        while let Some(j) = work.pop() {
            for &i in &preds[j] {
                if !mark[i] {
                    mark[i] = true;
                    work.push(i);
                }
            }
        }
        mark
    }

    fn has_terminal(&self, i: usize) -> bool {
        self.exp[i].as_ref().is_some_and(|e| e.edges.iter().any(|x| matches!(x, Edge::Fault | Edge::Blocked(_))))
    }

    /// Three-valued backward reachability of "good" nodes: certainly good
    /// nodes are found using only trusted edges, possibly good ones also
    /// count open nodes.
    fn tri(&self, silent_only: bool, terminals: bool) -> Vec<Tri> {
        let n = self.nodes.len();
        let cyc_cert = self.on_cycle(silent_only, true);
        let cyc_all = self.on_cycle(silent_only, false);
        let cert: Vec<bool> =
            (0..n).map(|i| cyc_cert[i] || (terminals && self.complete(i) && self.has_terminal(i))).collect();
        let maybe: Vec<bool> =
            (0..n).map(|i| cyc_all[i] || self.open(i) || (terminals && self.has_terminal(i))).collect();
        let yes = self.backward(&cert, silent_only, true);
        let maybe = self.backward(&maybe, silent_only, false);
        (0..n).map(|i| if yes[i] { Tri::Yes } else if maybe[i] { Tri::Maybe } else { Tri::No }).collect()
    }

    fn analyze(&mut self) {
        self.live = self.tri(false, true);
        self.diverge = self.tri(true, false);
    }

    fn silent_closure(&self, seeds: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
        let mut seen = BTreeSet::new();
        let mut work: Vec<usize> = seeds.into_iter().collect();
        while let Some(i) = work.pop() {
            if seen.insert(i) {
                work.extend(self.successors(i, true, false));
            }
        }
        seen
    }

    /// Complete traces with at most `k` actions from the start node.
    pub fn liveness_traces(&self, k: usize) -> LTraceSet {
        let mut out = LTraceSet::new();
        let mut stack = vec![(self.silent_closure([0]), Trace::empty())];
        while let Some((states, t)) = stack.pop() {
            let mut unknown = false;
            let mut faults = false;
            let mut blocked: BTreeSet<DirSet> = BTreeSet::new();
            let mut groups: BTreeMap<Action, BTreeSet<usize>> = BTreeMap::new();
            let mut truncate = false;
            for &i in &states {
                match self.diverge[i] {
                    Tri::Yes => faults = true,
                    Tri::Maybe => unknown = true,
                    Tri::No => {}
                }
                if self.open(i) {
                    unknown = true;
                }
                let Some(e) = &self.exp[i] else { continue };
                for edge in &e.edges {
                    match edge {
                        Edge::Fault => faults = true,
                        Edge::Blocked(d) => {
                            blocked.insert(d.clone());
                        }
                        Edge::Act(a, m) => {
                            let j = self.index[m];
                            match self.live[j] {
                                Tri::No => {}
                                Tri::Maybe => {
                                    unknown = true;
                                    groups.entry(a.clone()).or_default().insert(j);
                                }
                                Tri::Yes => {
                                    truncate = true;
                                    groups.entry(a.clone()).or_default().insert(j);
                                }
                            }
                        }
                        Edge::Silent(_) => {}
                    }
                }
            }
            if faults {
                out.insert_raw(LTrace::faulted(t.clone()));
                continue;
            }
            if unknown {
                out.mark_unknown(t.clone());
            }
            for d in blocked {
                out.insert_raw(LTrace::blocked(t.clone(), d));
            }
            if t.len() >= k {
                if truncate {
                    out.insert_raw(LTrace::truncated(t.clone()));
                }
                continue;
            }
            for (a, targets) in groups {
                let next = self.silent_closure(targets);
                stack.push((next, t.push(a)));
            }
        }
        out.normalize();
        out
    }
}
