use std::collections::BTreeSet;

use super::ast::{Chan, ChanExpr, PVar, Prefix, Process, Var};
use crate::error::{Error, Result};
use crate::resources::Resource;

/// Free names and constants of a process.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NameReport {
    pub free_chan_vars: BTreeSet<Var>,
    pub free_proc_vars: BTreeSet<PVar>,
    pub constants: BTreeSet<Chan>,
}

impl NameReport {
    pub fn is_closed(&self) -> bool {
        self.free_chan_vars.is_empty() && self.free_proc_vars.is_empty()
    }
}

pub fn analyze(p: &Process) -> NameReport {
    let mut report = NameReport::default();
    walk(p, &mut Vec::new(), &mut Vec::new(), &mut report);
    report
}

fn note_expr(e: &ChanExpr, bound: &[Var], report: &mut NameReport) {
    match e {
        ChanExpr::Const(c) => {
            report.constants.insert(c.clone());
        }
        ChanExpr::Var(x) if !bound.contains(x) => {
            report.free_chan_vars.insert(x.clone());
        }
        ChanExpr::Var(_) => {}
    }
}

fn walk(p: &Process, chans: &mut Vec<Var>, procs: &mut Vec<PVar>, report: &mut NameReport) {
    match p {
        Process::Sum(branches) => {
            for (prefix, cont) in branches {
                match prefix {
                    Prefix::Send { chan, payload } => {
                        note_expr(chan, chans, report);
                        note_expr(payload, chans, report);
                        walk(cont, chans, procs, report);
                    }
                    Prefix::Recv { chan, binder } => {
                        note_expr(chan, chans, report);
                        chans.push(binder.clone());
                        walk(cont, chans, procs, report);
                        chans.pop();
                    }
                }
            }
        }
        Process::IChoice(l, r) | Process::Par(l, r) => {
            walk(l, chans, procs, report);
            walk(r, chans, procs, report);
        }
        Process::New(x, body) => {
            chans.push(x.clone());
            walk(body, chans, procs, report);
            chans.pop();
        }
        Process::Rec(x, body) => {
            procs.push(x.clone());
            walk(body, chans, procs, report);
            procs.pop();
        }
        Process::PVar(x) => {
            if !procs.contains(x) {
                report.free_proc_vars.insert(x.clone());
            }
        }
    }
}

/// Errors unless `p` has no free channel or process variables.
/// Every channel variable occurring in `p`, bound or free.
pub fn all_chan_vars(p: &Process) -> BTreeSet<Var> {
    let mut out = BTreeSet::new();
    fn expr(e: &ChanExpr, out: &mut BTreeSet<Var>) {
        if let ChanExpr::Var(x) = e {
            out.insert(x.clone());
        }
    }
    fn go(p: &Process, out: &mut BTreeSet<Var>) {
        match p {
            Process::Sum(bs) => {
                for (pre, q) in bs {
                    match pre {
                        Prefix::Send { chan, payload } => {
                            expr(chan, out);
                            expr(payload, out);
                        }
                        Prefix::Recv { chan, binder } => {
                            expr(chan, out);
                            out.insert(binder.clone());
                        }
                    }
                    go(q, out);
                }
            }
            Process::IChoice(l, r) | Process::Par(l, r) => {
                go(l, out);
                go(r, out);
            }
            Process::New(x, b) => {
                out.insert(x.clone());
                go(b, out);
            }
            Process::Rec(_, b) => go(b, out),
            Process::PVar(_) => {}
        }
    }
    go(p, &mut out);
    out
}

pub fn ensure_closed(p: &Process) -> Result<()> {
    let report = analyze(p);
    if report.is_closed() {
        return Ok(());
    }
    let names: Vec<String> = report
        .free_chan_vars
        .iter()
        .map(|v| v.to_string())
        .chain(report.free_proc_vars.iter().map(|v| v.to_string()))
        .collect();
    Err(Error::OpenProcess(format!("free variables {}", names.join(", "))))
}

/// The judgment that `p` is closed and owns every constant it mentions.
pub fn safety_check(sigma: &Resource, p: &Process) -> Result<bool> {
    let report = analyze(p);
    if !report.is_closed() {
        ensure_closed(p)?;
    }
    Ok(report.constants.iter().all(|c| sigma.contains(c)))
}
