//! The denotational semantics as an observation graph.
//!
//! Nodes pair a subterm with its environment and the resource it is being
//! evaluated at. Each clause of the semantics becomes a set of edges: a
//! prefix runs its action through the resource-sensitive prefixing
//! operator, joins become silent branching, recursion binds its variable to
//! a closure (so the unfolding is the fixpoint), and a parallel composition
//! runs both components at the public lifting and re-executes their
//! actions at the composite resource, pairing dual actions into silent
//! communications.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::rc::Rc;
use std::sync::Arc;

use super::graph::{Edge, Expansion, Lts, Memo, Region, Tri};
use crate::error::{Error, Result};
use crate::resources::{apply_action, dual, public_lift, Action, Dir, DirSet, Resource, Universe, Verdict};
use crate::safety_sem::{Behavior, Env, ProcBinding, Trace};
use crate::syntax::{analyze, Chan, ChanExpr, PVar, Prefix, Process, Var};

pub(crate) type TermId = u32;

#[derive(Debug)]
enum TPrefix {
    Send(ChanExpr, ChanExpr),
    Recv(ChanExpr, Var),
}

#[derive(Debug)]
enum Kind {
    Sum(Vec<(TPrefix, TermId)>),
    IChoice(TermId, TermId),
    New(Var, TermId),
    Par(TermId, TermId),
    Rec(PVar, TermId),
    PVar(PVar),
}

#[derive(Debug)]
struct TermInfo {
    kind: Kind,
    free_chans: Vec<Var>,
    free_procs: Vec<PVar>,
}

#[derive(Default)]
struct Arena {
    terms: Vec<TermInfo>,
    intern: HashMap<Process, TermId>,
}

impl Arena {
    fn compile(&mut self, p: &Process) -> TermId {
        if let Some(&id) = self.intern.get(p) {
            return id;
        }
        let kind = match p {
            Process::Sum(bs) => Kind::Sum(
                bs.iter()
                    .map(|(pre, cont)| {
                        let pre = match pre {
                            Prefix::Send { chan, payload } => TPrefix::Send(chan.clone(), payload.clone()),
                            Prefix::Recv { chan, binder } => TPrefix::Recv(chan.clone(), binder.clone()),
                        };
                        (pre, self.compile(cont))
                    })
                    .collect(),
            ),
            Process::IChoice(l, r) => Kind::IChoice(self.compile(l), self.compile(r)),
            Process::Par(l, r) => Kind::Par(self.compile(l), self.compile(r)),
            Process::New(x, b) => Kind::New(x.clone(), self.compile(b)),
            Process::Rec(x, b) => Kind::Rec(x.clone(), self.compile(b)),
            Process::PVar(x) => Kind::PVar(x.clone()),
        };
        let names = analyze(p);
        let id = self.terms.len() as TermId;
        self.terms.push(TermInfo {
            kind,
            free_chans: names.free_chan_vars.into_iter().collect(),
            free_procs: names.free_proc_vars.into_iter().collect(),
        });
        self.intern.insert(p.clone(), id);
        id
    }
}

/// A recursion variable's meaning: the term it stands for, with the
/// environment in force where it was bound.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Closure {
    term: TermId,
    chans: Vec<(Var, Chan)>,
    procs: Vec<(PVar, PBind)>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) enum PBind {
    Closure(Arc<Closure>),
    Table(Arc<Behavior>),
    Bounded(Arc<Closure>, Arc<BTreeSet<Resource>>),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) enum DenNode {
    Term { t: TermId, chans: Vec<(Var, Chan)>, procs: Vec<(PVar, PBind)>, sigma: Resource },
    Pending { c: Chan, d: Chan, next: Arc<DenNode> },
    Par { left: Arc<DenNode>, right: Arc<DenNode>, sigma: Resource },
    Table { b: Arc<Behavior>, sigma: Resource, prefix: Trace },
    /// Every trace.
    Chaos,
}

pub(crate) struct DenLts {
    universe: Universe,
    liveness: bool,
    state_budget: usize,
    arena: Arena,
    memo: Memo<DenNode>,
    live: RefCell<HashMap<DenNode, Tri>>,
    in_progress: RefCell<HashSet<DenNode>>,
}

fn lookup<'a, K: PartialEq, V>(env: &'a [(K, V)], k: &K) -> Option<&'a V> {
    env.iter().find(|(x, _)| x == k).map(|(_, v)| v)
}

fn extend<K: Clone + Ord, V: Clone>(env: &[(K, V)], k: &K, v: V) -> Vec<(K, V)> {
    let mut out: Vec<(K, V)> = env.iter().filter(|(x, _)| x != k).cloned().collect();
    out.push((k.clone(), v));
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

impl DenLts {
    pub fn new(universe: &Universe, liveness: bool, state_budget: usize) -> Self {
        DenLts {
            universe: universe.clone(),
            liveness,
            state_budget,
            arena: Arena::default(),
            memo: Memo::new(),
            live: RefCell::new(HashMap::new()),
            in_progress: RefCell::new(HashSet::new()),
        }
    }

    /// The node for `⟦p⟧ρ` at `sigma`.
    pub fn start(&mut self, p: &Process, env: &Env, sigma: &Resource) -> Result<DenNode> {
        let t = self.arena.compile(p);
        let chans: Vec<(Var, Chan)> = env.chans.iter().map(|(x, c)| (x.clone(), c.clone())).collect();
        let mut procs = Vec::new();
        for (x, b) in &env.procs {
            let bind = match b {
                ProcBinding::Process(q) => PBind::Closure(self.closure_of(q, &chans)?),
                ProcBinding::Bounded { bound, holds_at } => {
                    if self.liveness {
                        return Err(Error::Incomparable(
                            "bounded bindings cannot stand for process variables in liveness mode".into(),
                        ));
                    }
                    PBind::Bounded(self.closure_of(bound, &chans)?, holds_at.clone())
                }
                ProcBinding::Behavior(b) => {
                    if self.liveness {
                        return Err(Error::Incomparable(
                            "behavior tables cannot stand for process variables in liveness mode".into(),
                        ));
                    }
                    PBind::Table(b.clone())
                }
            };
            procs.push((x.clone(), bind));
        }
        self.term_node(t, &chans, &procs, sigma.clone())
    }

    fn closure_of(&mut self, q: &Process, chans: &[(Var, Chan)]) -> Result<Arc<Closure>> {
        let qt = self.arena.compile(q);
        let info = &self.arena.terms[qt as usize];
        if let Some(y) = info.free_procs.first() {
            return Err(Error::UnboundVariable(y.to_string()));
        }
        let qchans = self.restrict_chans(qt, chans)?;
        Ok(Arc::new(Closure { term: qt, chans: qchans, procs: Vec::new() }))
    }

    fn restrict_chans(&self, t: TermId, chans: &[(Var, Chan)]) -> Result<Vec<(Var, Chan)>> {
        self.arena.terms[t as usize]
            .free_chans
            .iter()
            .map(|x| match lookup(chans, x) {
                Some(c) => Ok((x.clone(), c.clone())),
                None => Err(Error::UnboundVariable(x.to_string())),
            })
            .collect()
    }

    fn term_node(
        &self,
        t: TermId,
        chans: &[(Var, Chan)],
        procs: &[(PVar, PBind)],
        sigma: Resource,
    ) -> Result<DenNode> {
        let info = &self.arena.terms[t as usize];
        let chans = self.restrict_chans(t, chans)?;
        let procs = info
            .free_procs
            .iter()
            .map(|x| match lookup(procs, x) {
                Some(b) => Ok((x.clone(), b.clone())),
                None => Err(Error::UnboundVariable(x.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DenNode::Term { t, chans, procs, sigma })
    }

    fn resolve(e: &ChanExpr, chans: &[(Var, Chan)]) -> Result<Chan> {
        match e {
            ChanExpr::Const(c) => Ok(c.clone()),
            ChanExpr::Var(x) => lookup(chans, x).cloned().ok_or_else(|| Error::UnboundVariable(x.to_string())),
        }
    }

    /// `a ▷ next` at `sigma`, for a send or receive.
    fn prefix_edges(
        a: Action,
        sigma: &Resource,
        next: impl FnOnce(Resource) -> Result<DenNode>,
        edges: &mut Vec<Edge<DenNode>>,
    ) -> Result<()> {
        match apply_action(&a, sigma) {
            Verdict::Ok(s2) => {
                let n = next(s2)?;
                match &a {
                    Action::Send(c, d) if sigma.is_pri(d) => edges.push(Edge::Act(
                        Action::Alloc(d.clone()),
                        DenNode::Pending { c: c.clone(), d: d.clone(), next: Arc::new(n) },
                    )),
                    _ => edges.push(Edge::Act(a, n)),
                }
            }
            Verdict::Impermissible => edges.push(Edge::Fault),
            Verdict::Impossible => {}
        }
        Ok(())
    }

    /// `δ_Δ ▷` at `sigma`: a fault or the observed blocking set.
    fn block_edge(dirs: DirSet, sigma: &Resource) -> Edge<DenNode> {
        match apply_action(&Action::Block(dirs.clone()), sigma) {
            Verdict::Ok(_) => Edge::Blocked(dirs.project(sigma)),
            _ => Edge::Fault,
        }
    }

    fn expand_term(
        &self,
        t: TermId,
        chans: &[(Var, Chan)],
        procs: &[(PVar, PBind)],
        sigma: &Resource,
    ) -> Result<Expansion<DenNode>> {
        let mut edges = Vec::new();
        match &self.arena.terms[t as usize].kind {
            Kind::Sum(branches) => {
                let mut dirs = DirSet::empty();
                for (prefix, cont) in branches {
                    match prefix {
                        TPrefix::Send(ce, de) => {
                            let c = Self::resolve(ce, chans)?;
                            let d = Self::resolve(de, chans)?;
                            dirs.insert(Dir::send(&c));
                            Self::prefix_edges(
                                Action::Send(c, d),
                                sigma,
                                |s2| self.term_node(*cont, chans, procs, s2),
                                &mut edges,
                            )?;
                        }
                        TPrefix::Recv(ce, x) => {
                            let c = Self::resolve(ce, chans)?;
                            dirs.insert(Dir::recv(&c));
                            for d in self.universe.chans() {
                                let inner = extend(chans, x, d.clone());
                                Self::prefix_edges(
                                    Action::Recv(c.clone(), d.clone()),
                                    sigma,
                                    |s2| self.term_node(*cont, &inner, procs, s2),
                                    &mut edges,
                                )?;
                            }
                        }
                    }
                }
                if self.liveness {
                    edges.push(Self::block_edge(dirs, sigma));
                }
            }
            Kind::IChoice(l, r) => {
                edges.push(Edge::Silent(self.term_node(*l, chans, procs, sigma.clone())?));
                edges.push(Edge::Silent(self.term_node(*r, chans, procs, sigma.clone())?));
            }
            Kind::New(x, body) => {
                for c in self.universe.chans() {
                    if let Verdict::Ok(s2) = apply_action(&Action::Alloc(c.clone()), sigma) {
                        let inner = extend(chans, x, c.clone());
                        edges.push(Edge::Silent(self.term_node(*body, &inner, procs, s2)?));
                    }
                }
            }
            Kind::Rec(x, body) => {
                let me = Closure { term: t, chans: chans.to_vec(), procs: procs.to_vec() };
                let inner = extend(procs, x, PBind::Closure(Arc::new(me)));
                edges.push(Edge::Silent(self.term_node(*body, chans, &inner, sigma.clone())?));
            }
            Kind::PVar(x) => match lookup(procs, x) {
                Some(PBind::Closure(cl)) => {
                    edges.push(Edge::Silent(self.term_node(cl.term, &cl.chans, &cl.procs, sigma.clone())?))
                }
                Some(PBind::Table(b)) => edges.push(Edge::Silent(DenNode::Table {
                    b: b.clone(),
                    sigma: sigma.clone(),
                    prefix: Trace::empty(),
                })),
                Some(PBind::Bounded(cl, holds_at)) => {
                if holds_at.contains(sigma) {
                    edges.push(Edge::Silent(self.term_node(cl.term, &cl.chans, &cl.procs, sigma.clone())?))
                } else {
                    edges.push(Edge::Silent(DenNode::Chaos))
                }
            }
                None => return Err(Error::UnboundVariable(x.to_string())),
            },
            Kind::Par(l, r) => {
                let lift = public_lift(sigma);
                let left = self.term_node(*l, chans, procs, lift.clone())?;
                let right = self.term_node(*r, chans, procs, lift)?;
                edges.push(Edge::Silent(DenNode::Par {
                    left: Arc::new(left),
                    right: Arc::new(right),
                    sigma: sigma.clone(),
                }));
            }
        }
        Ok(Expansion { edges, complete: true })
    }

    /// Whether a component node has at least one complete trace.
    fn liveness_of(&self, n: &DenNode) -> Result<Tri> {
        if let Some(t) = self.live.borrow().get(n) {
            return Ok(*t);
        }
        if !self.in_progress.borrow_mut().insert(n.clone()) {
            return Ok(Tri::Maybe);
        }
        let region = Region::explore(self, n, self.state_budget);
        self.in_progress.borrow_mut().remove(n);
        let region = region?;
        let mut cache = self.live.borrow_mut();
        for (node, t) in region.nodes.iter().zip(&region.live) {
            if *t != Tri::Maybe {
                cache.insert(node.clone(), *t);
            }
        }
        Ok(region.live[0])
    }

    fn expand_par(&self, left: &Arc<DenNode>, right: &Arc<DenNode>, sigma: &Resource) -> Result<Expansion<DenNode>> {
        let mut complete = true;
        let mut edges = Vec::new();
        // In the liveness semantics a pair of component positions only
        // contributes if both components can still finish a trace.
        let mut usable = |n: &DenNode| -> Result<bool> {
            if !self.liveness {
                return Ok(true);
            }
            Ok(match self.liveness_of(n)? {
                Tri::Yes => true,
                Tri::No => false,
                Tri::Maybe => {
                    complete = false;
                    true
                }
            })
        };
        if !usable(left)? || !usable(right)? {
            return Ok(Expansion { edges, complete });
        }
        let el = self.edges(left)?;
        let er = self.edges(right)?;
        let mut ok_l = Vec::with_capacity(el.edges.len());
        for e in &el.edges {
            ok_l.push(match e {
                Edge::Silent(m) | Edge::Act(_, m) => usable(m)?,
                _ => true,
            });
        }
        let mut ok_r = Vec::with_capacity(er.edges.len());
        for e in &er.edges {
            ok_r.push(match e {
                Edge::Silent(m) | Edge::Act(_, m) => usable(m)?,
                _ => true,
            });
        }
        complete &= el.complete && er.complete;

        let pair = |l: &Arc<DenNode>, r: &Arc<DenNode>, s: Resource| DenNode::Par {
            left: l.clone(),
            right: r.clone(),
            sigma: s,
        };
        for (side, (exp, ok)) in [(&el, &ok_l), (&er, &ok_r)].into_iter().enumerate() {
            for (e, &ok) in exp.edges.iter().zip(ok.iter()) {
                if !ok {
                    continue;
                }
                let rebuild = |m: &DenNode, s: Resource| {
                    let m = Arc::new(m.clone());
                    if side == 0 {
                        pair(&m, right, s)
                    } else {
                        pair(left, &m, s)
                    }
                };
                match e {
                    Edge::Silent(m) => edges.push(Edge::Silent(rebuild(m, sigma.clone()))),
                    Edge::Act(Action::Alloc(d), m) => {
                        if let Verdict::Ok(s2) = apply_action(&Action::Alloc(d.clone()), sigma) {
                            edges.push(Edge::Silent(rebuild(m, s2)));
                        }
                    }
                    Edge::Act(a, m) => Self::prefix_edges(a.clone(), sigma, |s2| Ok(rebuild(m, s2)), &mut edges)?,
                    Edge::Fault => edges.push(Edge::Fault),
                    Edge::Blocked(_) => {}
                }
            }
        }
        for e1 in &el.edges {
            let Edge::Blocked(d1) = e1 else { continue };
            for e2 in &er.edges {
                let Edge::Blocked(d2) = e2 else { continue };
                if d1.compatible(d2) {
                    edges.push(Self::block_edge(d1.union(d2), sigma));
                }
            }
        }
        for (e1, &ok1) in el.edges.iter().zip(&ok_l) {
            let Edge::Act(a, m1) = e1 else { continue };
            let Some(want) = dual(a) else { continue };
            for (e2, &ok2) in er.edges.iter().zip(&ok_r) {
                match e2 {
                    Edge::Act(b, m2) if *b == want && ok1 && ok2 => {
                        edges.push(Edge::Silent(pair(&Arc::new(m1.clone()), &Arc::new(m2.clone()), sigma.clone())))
                    }
                    _ => {}
                }
            }
        }
        Ok(Expansion { edges, complete })
    }

    fn expand_table(b: &Arc<Behavior>, sigma: &Resource, prefix: &Trace) -> Expansion<DenNode> {
        let mut next: Vec<Action> = b
            .at(sigma)
            .iter()
            .filter(|t| t.len() == prefix.len() + 1 && prefix.is_prefix_of(t))
            .map(|t| t.actions()[prefix.len()].clone())
            .collect();
        next.sort();
        let edges = next
            .into_iter()
            .map(|a| match a {
                Action::Fault => Edge::Fault,
                a => {
                    let p = prefix.push(a.clone());
                    Edge::Act(a, DenNode::Table { b: b.clone(), sigma: sigma.clone(), prefix: p })
                }
            })
            .collect();
        Expansion { edges, complete: true }
    }

    fn expand_chaos(&self) -> Expansion<DenNode> {
        let mut edges = vec![Edge::Fault];
        for c in self.universe.chans() {
            edges.push(Edge::Act(Action::Alloc(c.clone()), DenNode::Chaos));
            for d in self.universe.chans() {
                edges.push(Edge::Act(Action::Send(c.clone(), d.clone()), DenNode::Chaos));
                edges.push(Edge::Act(Action::Recv(c.clone(), d.clone()), DenNode::Chaos));
            }
        }
        Expansion { edges, complete: true }
    }

    fn expand(&self, n: &DenNode) -> Result<Expansion<DenNode>> {
        match n {
            DenNode::Term { t, chans, procs, sigma } => self.expand_term(*t, chans, procs, sigma),
            DenNode::Pending { c, d, next } => Ok(Expansion {
                edges: vec![Edge::Act(Action::Send(c.clone(), d.clone()), (**next).clone())],
                complete: true,
            }),
            DenNode::Par { left, right, sigma } => self.expand_par(left, right, sigma),
            DenNode::Table { b, sigma, prefix } => Ok(Self::expand_table(b, sigma, prefix)),
            DenNode::Chaos => Ok(self.expand_chaos()),
        }
    }
}

impl Lts for DenLts {
    type Node = DenNode;

    fn edges(&self, n: &DenNode) -> Result<Rc<Expansion<DenNode>>> {
        self.memo.get_or_try(n, || self.expand(n))
    }

    fn expanded(&self) -> usize {
        self.memo.len()
    }
}
