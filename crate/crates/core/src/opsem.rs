//! The two operational layers: action generation from syntax, and execution
//! of generated actions against a resource.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::resources::{apply_action, dual, Action, Dir, DirSet, Resource, Universe, Verdict};
use crate::syntax::{ensure_closed, subst_chan, unfold, ChanExpr, Chan, Prefix, Process};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenStep {
    pub action: Action,
    pub successor: Process,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ResStep {
    pub action: Action,
    pub successor: Process,
    pub next_resource: Resource,
}

fn constant(e: &ChanExpr) -> &Chan {
    match e {
        ChanExpr::Const(c) => c,
        ChanExpr::Var(x) => panic!("free channel variable {x} in a process assumed closed"),
    }
}

/// All steps derivable by the action-generation rules. Receives and
/// allocations are instantiated over every channel of `universe`.
pub fn gen_steps(p: &Process, universe: &Universe) -> Result<BTreeSet<GenStep>> {
    ensure_closed(p)?;
    Ok(gen_steps_closed(p, universe))
}

pub(crate) fn gen_steps_closed(p: &Process, universe: &Universe) -> BTreeSet<GenStep> {
    let mut out = BTreeSet::new();
    gen_into(p, universe, &mut out);
    out
}

fn gen_into(p: &Process, u: &Universe, out: &mut BTreeSet<GenStep>) {
    let mut push = |action, successor| {
        out.insert(GenStep { action, successor });
    };
    match p {
        Process::Sum(branches) => {
            for (prefix, cont) in branches {
                match prefix {
                    Prefix::Send { chan, payload } => {
                        push(Action::Send(constant(chan).clone(), constant(payload).clone()), cont.clone())
                    }
                    Prefix::Recv { chan, binder } => {
                        let c = constant(chan);
                        for d in u.chans() {
                            push(Action::Recv(c.clone(), d.clone()), subst_chan(cont, binder, d));
                        }
                    }
                }
            }
        }
        Process::IChoice(l, r) => {
            push(Action::Tau, (**l).clone());
            push(Action::Tau, (**r).clone());
        }
        Process::New(x, body) => {
            for c in u.chans() {
                push(Action::Alloc(c.clone()), subst_chan(body, x, c));
            }
        }
        Process::Rec(x, body) => push(Action::Tau, unfold(x, body)),
        Process::PVar(x) => panic!("free process variable {x} in a process assumed closed"),
        Process::Par(l, r) => {
            let left = gen_steps_closed(l, u);
            let right = gen_steps_closed(r, u);
            for s in &left {
                out.insert(GenStep { action: s.action.clone(), successor: Process::par(s.successor.clone(), (**r).clone()) });
            }
            for s in &right {
                out.insert(GenStep { action: s.action.clone(), successor: Process::par((**l).clone(), s.successor.clone()) });
            }
            for s in left.iter().filter(|s| s.action.is_communication()) {
                let want = dual(&s.action);
                for t in right.iter().filter(|t| Some(&t.action) == want.as_ref()) {
                    out.insert(GenStep {
                        action: Action::Tau,
                        successor: Process::par(s.successor.clone(), t.successor.clone()),
                    });
                }
            }
        }
    }
}

/// Resource-sensitive steps: permitted actions proceed, impermissible ones
/// fault to `0`, impossible ones vanish.
pub fn res_steps(p: &Process, sigma: &Resource, universe: &Universe) -> Result<BTreeSet<ResStep>> {
    ensure_closed(p)?;
    Ok(res_steps_closed(p, sigma, universe))
}

pub(crate) fn res_steps_closed(p: &Process, sigma: &Resource, universe: &Universe) -> BTreeSet<ResStep> {
    execute(gen_steps_closed(p, universe), sigma)
}

fn execute(gen: BTreeSet<GenStep>, sigma: &Resource) -> BTreeSet<ResStep> {
    let mut out = BTreeSet::new();
    for g in gen {
        match apply_action(&g.action, sigma) {
            Verdict::Ok(next) => {
                out.insert(ResStep { action: g.action, successor: g.successor, next_resource: next });
            }
            Verdict::Impermissible => {
                out.insert(ResStep { action: Action::Fault, successor: Process::nil(), next_resource: sigma.clone() });
            }
            Verdict::Impossible => {}
        }
    }
    out
}

/// `Some(Δ)` when `p` can only communicate under `sigma`, with Δ the
/// directions of its available prefixes on owned channels.
///
/// A process that could allocate is never blocked, even when every channel
/// of the finite universe is already taken: with unboundedly many channels
/// a fresh one would always exist.
pub fn blocked_set(p: &Process, sigma: &Resource, universe: &Universe) -> Result<Option<DirSet>> {
    ensure_closed(p)?;
    Ok(blocked_set_closed(p, sigma, universe))
}

pub(crate) fn blocked_set_closed(p: &Process, sigma: &Resource, universe: &Universe) -> Option<DirSet> {
    let gen = gen_steps_closed(p, universe);
    if gen.iter().any(|g| matches!(g.action, Action::Alloc(_))) {
        return None;
    }
    if execute(gen, sigma).iter().any(|s| !s.action.is_communication()) {
        return None;
    }
    let mut dirs = DirSet::empty();
    collect_dirs(p, sigma, &mut dirs);
    Some(dirs)
}

fn collect_dirs(p: &Process, sigma: &Resource, dirs: &mut DirSet) {
    match p {
        Process::Sum(branches) => {
            for (prefix, _) in branches {
                let c = constant(prefix.subject());
                if sigma.contains(c) {
                    dirs.insert(match prefix {
                        Prefix::Send { .. } => Dir::send(c),
                        Prefix::Recv { .. } => Dir::recv(c),
                    });
                }
            }
        }
        Process::Par(l, r) => {
            collect_dirs(l, sigma, dirs);
            collect_dirs(r, sigma, dirs);
        }
        _ => {}
    }
}
