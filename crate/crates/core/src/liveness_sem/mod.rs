//! Liveness traces: blocking observations, the liveness denotational
//! semantics, liveness interleaving and the refinement order.

mod ltrace;

use std::collections::{BTreeMap, HashMap};

use crate::config::SemConfig;
use crate::error::{Error, Result};
use crate::lts::den::DenLts;
use crate::lts::graph::Region;
use crate::lts::op::OpLts;
use crate::resources::{apply_action, dual, observe_action, Action, Dir, Resource, Universe, Verdict};
use crate::safety_sem::{Env, Trace};
use crate::syntax::{check_constants, ensure_closed, ChanExpr, Prefix, Process};

pub use ltrace::{LBehavior, LTrace, LTraceSet, Terminal};

/// `LO⟦p⟧σ` up to `cfg.depth` actions.
pub fn lobserve(p: &Process, sigma: &Resource, cfg: &SemConfig) -> Result<LTraceSet> {
    ensure_closed(p)?;
    check_constants(p, &cfg.universe)?;
    let lts = OpLts::new(&cfg.universe, true);
    Ok(Region::explore(&lts, &OpLts::start(p, sigma), cfg.state_budget)?.liveness_traces(cfg.depth))
}

/// `L⟦p⟧ρσ`. Process variables in `env` must be bound to processes.
pub fn ldenote_at(p: &Process, env: &Env, sigma: &Resource, cfg: &SemConfig) -> Result<LTraceSet> {
    check_constants(p, &cfg.universe)?;
    let mut lts = DenLts::new(&cfg.universe, true, cfg.state_budget);
    let start = lts.start(p, env, sigma)?;
    Ok(Region::explore(&lts, &start, cfg.state_budget)?.liveness_traces(cfg.depth))
}

/// `L⟦p⟧ρ` tabulated over every resource of the universe.
pub fn ldenote(p: &Process, env: &Env, cfg: &SemConfig) -> Result<LBehavior> {
    check_constants(p, &cfg.universe)?;
    let mut lts = DenLts::new(&cfg.universe, true, cfg.state_budget);
    let mut starts = BTreeMap::new();
    for sigma in cfg.universe.all_resources() {
        let n = lts.start(p, env, &sigma)?;
        starts.insert(sigma, n);
    }
    LBehavior::try_tabulate(&cfg.universe, cfg.depth, |sigma| {
        Ok(Region::explore(&lts, &starts[sigma], cfg.state_budget)?.liveness_traces(cfg.depth))
    })
}

/// The direction of a prefix, with its subject resolved under `env`.
pub fn dir_of(prefix: &Prefix, env: &Env) -> Result<Dir> {
    let chan = match prefix.subject() {
        ChanExpr::Const(c) => c.clone(),
        ChanExpr::Var(x) => env.chans.get(x).cloned().ok_or_else(|| Error::UnboundVariable(x.to_string()))?,
    };
    Ok(match prefix {
        Prefix::Send { .. } => Dir::send(&chan),
        Prefix::Recv { .. } => Dir::recv(&chan),
    })
}

/// Cuts every trace to at most `k` actions; longer ones become truncated.
fn cut(set: LTraceSet, k: usize) -> LTraceSet {
    let mut out = LTraceSet::new();
    for t in set.iter() {
        if t.actions.len() > k {
            out.insert_raw(LTrace::truncated(t.actions.actions()[..k].to_vec()));
        } else {
            out.insert_raw(t.clone());
        }
    }
    for u in set.unknown() {
        if u.len() <= k {
            out.mark_unknown(u.clone());
        }
    }
    out.normalize();
    out
}

/// `α ▷ rest` in the liveness semantics: no empty trace is added, and an
/// impossible action contributes nothing.
fn lprefix_at(a: &Action, sigma: &Resource, cont: impl FnOnce(&Resource) -> LTraceSet) -> LTraceSet {
    match apply_action(a, sigma) {
        Verdict::Impermissible => LTraceSet::catastrophic(),
        Verdict::Impossible => LTraceSet::new(),
        Verdict::Ok(_) if matches!(a, Action::Block(_)) => {
            let Action::Block(d) = a else { unreachable!() };
            LTraceSet::from_traces([LTrace::blocked(Trace::empty(), d.project(sigma))])
        }
        Verdict::Ok(s2) => {
            let obs = observe_action(a, sigma);
            let mut out = LTraceSet::new();
            let rest = cont(&s2);
            for t in rest.iter() {
                out.insert_raw(LTrace::new(t.actions.concat_front(&obs), t.terminal.clone()));
            }
            for u in rest.unknown() {
                out.mark_unknown(u.concat_front(&obs));
            }
            out.normalize();
            out
        }
    }
}

/// `α ▷ B` for liveness behaviors. A blocking action ignores `B`.
pub fn lprefix_behavior(a: &Action, b: &LBehavior) -> LBehavior {
    let k = b.depth();
    b.map(|sigma| cut(lprefix_at(a, sigma, |s2| b.at(s2)), k))
}

struct LInterleaver<'a> {
    t: &'a LTrace,
    u: &'a LTrace,
    memo: HashMap<(usize, usize, Resource), LTraceSet>,
}

impl LInterleaver<'_> {
    fn at(&mut self, i: usize, j: usize, sigma: &Resource) -> LTraceSet {
        let key = (i, j, sigma.clone());
        if let Some(r) = self.memo.get(&key) {
            return r.clone();
        }
        let (t, u) = (self.t, self.u);
        let (ta, ua) = (t.actions.actions(), u.actions.actions());
        let t_end = (i == ta.len()).then_some(&t.terminal);
        let u_end = (j == ua.len()).then_some(&u.terminal);
        let mut out = LTraceSet::new();
        if t_end == Some(&Terminal::Faulted) || u_end == Some(&Terminal::Faulted) {
            out = LTraceSet::catastrophic();
        } else if t_end == Some(&Terminal::Truncated) || u_end == Some(&Terminal::Truncated) {
            out.insert(LTrace::truncated(Trace::empty()));
        } else {
            if let (Some(Terminal::Blocked(d1)), Some(Terminal::Blocked(d2))) = (t_end, u_end) {
                if d1.compatible(d2) {
                    out = out.union(&lprefix_at(&Action::Block(d1.union(d2)), sigma, |_| LTraceSet::new()));
                }
            }
            if let Some(a) = ta.get(i) {
                let r = lprefix_at(a, sigma, |s2| self.at(i + 1, j, s2));
                out = out.union(&r);
            }
            if let Some(b) = ua.get(j) {
                let r = lprefix_at(b, sigma, |s2| self.at(i, j + 1, s2));
                out = out.union(&r);
            }
            if let (Some(a), Some(b)) = (ta.get(i), ua.get(j)) {
                if dual(a).as_ref() == Some(b) {
                    let r = self.at(i + 1, j + 1, sigma);
                    out = out.union(&r);
                }
            }
        }
        self.memo.insert(key, out.clone());
        out
    }
}

/// `t ∥ u` for liveness traces. Two blocked ends merge only when neither
/// could complete a communication with the other.
pub fn linterleave(t: &LTrace, u: &LTrace, universe: &Universe, depth: usize) -> LBehavior {
    LBehavior::tabulate(universe, depth, |sigma| {
        let mut it = LInterleaver { t, u, memo: HashMap::new() };
        cut(it.at(0, 0, sigma), depth)
    })
}

/// `t ⊑ u`.
pub fn trace_refines(t: &LTrace, u: &LTrace) -> bool {
    match (&t.terminal, &u.terminal) {
        (_, Terminal::Faulted) => u.actions.is_prefix_of(&t.actions),
        (Terminal::Blocked(d), Terminal::Blocked(d2)) => t.actions == u.actions && d2.is_subset(d),
        _ => t == u,
    }
}

/// `T ⊑ V`: every trace of `T` refines some trace of `V`. Refuses sets with
/// undecided prefixes.
pub fn set_refines(t: &LTraceSet, v: &LTraceSet) -> Result<bool> {
    if t.has_unknown() || v.has_unknown() {
        return Err(Error::Incomparable("liveness trace set has undecided prefixes".into()));
    }
    Ok(t.iter().all(|x| v.iter().any(|y| trace_refines(x, y))))
}
