//! Exhaustive enumeration of small closed processes.

use crate::resources::Universe;
use crate::syntax::{ChanExpr, PVar, Prefix, Process, Var};

/// Every closed process of depth at most `depth` over `universe`, with
/// sums of at most two branches. Binders are named by nesting level, so
/// distinct trees are never alpha-equivalent duplicates of each other.
pub fn enumerate_processes(universe: &Universe, depth: usize) -> Vec<Process> {
    let mut out = Vec::new();
    enumerate(universe, depth, &[], &[], &mut out);
    out.sort();
    out.dedup();
    out
}

fn exprs(universe: &Universe, chans: &[Var]) -> Vec<ChanExpr> {
    let mut v: Vec<ChanExpr> = universe.chans().iter().cloned().map(ChanExpr::Const).collect();
    v.extend(chans.iter().cloned().map(ChanExpr::Var));
    v
}

fn prefixed(universe: &Universe, depth: usize, chans: &[Var], procs: &[PVar]) -> Vec<(Prefix, Process)> {
    let mut out = Vec::new();
    if depth == 0 {
        return out;
    }
    let es = exprs(universe, chans);
    let mut conts = Vec::new();
    enumerate(universe, depth - 1, chans, procs, &mut conts);
    for c in &es {
        for d in &es {
            for q in &conts {
                out.push((Prefix::Send { chan: c.clone(), payload: d.clone() }, q.clone()));
            }
        }
    }
    let y = Var::new(format!("x{}", chans.len() + 1));
    let mut inner = chans.to_vec();
    inner.push(y.clone());
    let mut conts = Vec::new();
    enumerate(universe, depth - 1, &inner, procs, &mut conts);
    for c in &es {
        for q in &conts {
            out.push((Prefix::Recv { chan: c.clone(), binder: y.clone() }, q.clone()));
        }
    }
    out
}

fn enumerate(universe: &Universe, depth: usize, chans: &[Var], procs: &[PVar], out: &mut Vec<Process>) {
    out.push(Process::nil());
    out.extend(procs.iter().cloned().map(Process::PVar));
    if depth == 0 {
        return;
    }
    let branches = prefixed(universe, depth, chans, procs);
    for (i, b) in branches.iter().enumerate() {
        out.push(Process::Sum(vec![b.clone()]));
        for b2 in &branches[i..] {
            out.push(Process::Sum(vec![b.clone(), b2.clone()]));
        }
    }
    let mut subs = Vec::new();
    enumerate(universe, depth - 1, chans, procs, &mut subs);
    for l in &subs {
        for r in &subs {
            out.push(Process::ichoice(l.clone(), r.clone()));
            out.push(Process::par(l.clone(), r.clone()));
        }
    }
    let x = Var::new(format!("x{}", chans.len() + 1));
    let mut inner = chans.to_vec();
    inner.push(x.clone());
    let mut bodies = Vec::new();
    enumerate(universe, depth - 1, &inner, procs, &mut bodies);
    out.extend(bodies.into_iter().map(|b| Process::new_chan(x.clone(), b)));
    let big_x = PVar::new(format!("X{}", procs.len() + 1));
    let mut inner = procs.to_vec();
    inner.push(big_x.clone());
    let mut bodies = Vec::new();
    enumerate(universe, depth - 1, chans, &inner, &mut bodies);
    out.extend(bodies.into_iter().map(|b| Process::rec(big_x.clone(), b)));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::ensure_closed;

    #[derive(Default)]
    struct Seen {
        nil: bool,
        send: bool,
        recv: bool,
        sum: bool,
        ichoice: bool,
        new: bool,
        par: bool,
        rec: bool,
        var: bool,
    }

    fn note(p: &Process, s: &mut Seen) {
        match p {
            Process::Sum(bs) => {
                s.nil |= bs.is_empty();
                s.sum |= bs.len() >= 2;
                for (pre, q) in bs {
                    match pre {
                        Prefix::Send { .. } => s.send = true,
                        Prefix::Recv { .. } => s.recv = true,
                    }
                    note(q, s);
                }
            }
            Process::IChoice(l, r) => {
                s.ichoice = true;
                note(l, s);
                note(r, s);
            }
            Process::Par(l, r) => {
                s.par = true;
                note(l, s);
                note(r, s);
            }
            Process::New(_, b) => {
                s.new = true;
                note(b, s);
            }
            Process::Rec(_, b) => {
                s.rec = true;
                note(b, s);
            }
            Process::PVar(_) => s.var = true,
        }
    }

    #[test]
    fn depth_two_covers_every_production() {
        let all = enumerate_processes(&Universe::new(["c"]), 2);
        let mut s = Seen::default();
        for p in &all {
            ensure_closed(p).unwrap();
            assert!(p.depth() <= 2);
            note(p, &mut s);
        }
        assert!(s.nil && s.send && s.recv && s.sum && s.ichoice && s.new && s.par && s.rec && s.var);
    }
}
