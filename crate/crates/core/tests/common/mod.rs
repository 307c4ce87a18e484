//! Helpers shared by the integration tests.
#![allow(dead_code)]

use pirho::liveness_sem::{LTrace, Terminal};
use pirho::resources::{Action, Dir, DirSet, Universe};
use pirho::safety_sem::Trace;
use pirho::syntax::{ChanExpr, PVar, Prefix, Process, Var};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn u(names: &[&str]) -> Universe {
    Universe::new(names.iter().copied())
}

fn random_prefix<R: Rng>(rng: &mut R, universe: &Universe) -> Prefix {
    let chans = universe.chans();
    let c = ChanExpr::Const(chans.choose(rng).expect("nonempty universe").clone());
    if rng.gen_bool(0.5) {
        let d = ChanExpr::Const(chans.choose(rng).expect("nonempty universe").clone());
        Prefix::Send { chan: c, payload: d }
    } else {
        Prefix::Recv { chan: c, binder: Var::new("w") }
    }
}

/// Positions of `0` leaves as paths of child indices. `guarded` keeps only
/// leaves under a prefix, `no_par` only leaves outside any `|`.
fn nil_leaves(p: &Process, guarded: bool, no_par: bool) -> Vec<Vec<usize>> {
    fn go(p: &Process, under_prefix: bool, guarded: bool, no_par: bool, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        match p {
            Process::Sum(bs) if bs.is_empty() => {
                if under_prefix || !guarded {
                    out.push(path.clone());
                }
            }
            Process::Sum(bs) => {
                for (i, (_, q)) in bs.iter().enumerate() {
                    path.push(i);
                    go(q, true, guarded, no_par, path, out);
                    path.pop();
                }
            }
            Process::IChoice(l, r) | Process::Par(l, r) => {
                if no_par && matches!(p, Process::Par(..)) {
                    return;
                }
                for (i, q) in [l, r].into_iter().enumerate() {
                    path.push(i);
                    go(q, under_prefix, guarded, no_par, path, out);
                    path.pop();
                }
            }
            Process::New(_, q) | Process::Rec(_, q) => {
                path.push(0);
                go(q, under_prefix, guarded, no_par, path, out);
                path.pop();
            }
            Process::PVar(_) => {}
        }
    }
    let mut out = Vec::new();
    go(p, false, guarded, no_par, &mut Vec::new(), &mut out);
    out
}

fn replace_at(p: &Process, path: &[usize], with: &Process) -> Process {
    let Some((&i, rest)) = path.split_first() else {
        return with.clone();
    };
    match p {
        Process::Sum(bs) => {
            let mut bs = bs.clone();
            bs[i].1 = replace_at(&bs[i].1, rest, with);
            Process::Sum(bs)
        }
        Process::IChoice(l, r) => {
            if i == 0 {
                Process::ichoice(replace_at(l, rest, with), (**r).clone())
            } else {
                Process::ichoice((**l).clone(), replace_at(r, rest, with))
            }
        }
        Process::Par(l, r) => {
            if i == 0 {
                Process::par(replace_at(l, rest, with), (**r).clone())
            } else {
                Process::par((**l).clone(), replace_at(r, rest, with))
            }
        }
        Process::New(x, q) => Process::new_chan(x.clone(), replace_at(q, rest, with)),
        Process::Rec(x, q) => Process::rec(x.clone(), replace_at(q, rest, with)),
        Process::PVar(_) => unreachable!("leaf paths end at 0"),
    }
}

/// A body for `rec X. _` in which `X` occurs once, guarded and outside
/// any parallel composition.
pub fn guarded_body<R: Rng>(rng: &mut R, q: &Process, x: &PVar, universe: &Universe) -> Process {
    let hole = Process::PVar(x.clone());
    let leaves = nil_leaves(q, true, true);
    match leaves.choose(rng) {
        Some(path) => replace_at(q, path, &hole),
        None => Process::ichoice(q.clone(), Process::Sum(vec![(random_prefix(rng, universe), hole)])),
    }
}

/// `q` with one `0` leaf, anywhere, replaced by `X`.
pub fn open_body<R: Rng>(rng: &mut R, q: &Process, x: &PVar) -> Process {
    let hole = Process::PVar(x.clone());
    match nil_leaves(q, false, false).choose(rng) {
        Some(path) => replace_at(q, path, &hole),
        None => Process::par(q.clone(), hole),
    }
}

pub fn random_action<R: Rng>(rng: &mut R, universe: &Universe) -> Action {
    let chans = universe.chans();
    let c = chans.choose(rng).expect("nonempty universe").clone();
    let d = chans.choose(rng).expect("nonempty universe").clone();
    match rng.gen_range(0..3) {
        0 => Action::Send(c, d),
        1 => Action::Recv(c, d),
        _ => Action::Alloc(c),
    }
}

pub fn all_dirs(universe: &Universe) -> Vec<Dir> {
    universe.chans().iter().flat_map(|c| [Dir::send(c), Dir::recv(c)]).collect()
}

/// Every subset of the directions over `universe`.
pub fn all_dir_sets(universe: &Universe) -> Vec<DirSet> {
    let dirs = all_dirs(universe);
    (0u32..1 << dirs.len())
        .map(|mask| {
            let mut s = DirSet::empty();
            for (i, d) in dirs.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    s.insert(d.clone());
                }
            }
            s
        })
        .collect()
}

pub fn random_dir_set<R: Rng>(rng: &mut R, universe: &Universe) -> DirSet {
    let mut s = DirSet::empty();
    for d in all_dirs(universe) {
        if rng.gen_bool(0.3) {
            s.insert(d);
        }
    }
    s
}

pub fn random_ltrace<R: Rng>(rng: &mut R, universe: &Universe, max_len: usize) -> LTrace {
    let n = rng.gen_range(0..=max_len);
    let actions: Vec<Action> = (0..n).map(|_| random_action(rng, universe)).collect();
    let terminal = match rng.gen_range(0..6) {
        0 => Terminal::Faulted,
        1 => Terminal::Truncated,
        _ => Terminal::Blocked(random_dir_set(rng, universe)),
    };
    LTrace::new(Trace(actions), terminal)
}

/// A trace that `t` usually refines: `t` itself, `t` with a smaller
/// blocked set, or a prefix of `t` ending in a fault.
pub fn weaken<R: Rng>(rng: &mut R, t: &LTrace, universe: &Universe) -> LTrace {
    match rng.gen_range(0..4) {
        0 => t.clone(),
        1 => match &t.terminal {
            Terminal::Blocked(d) => {
                let mut s = DirSet::empty();
                for x in d.iter() {
                    if rng.gen_bool(0.5) {
                        s.insert(x.clone());
                    }
                }
                LTrace::new(t.actions.clone(), Terminal::Blocked(s))
            }
            _ => t.clone(),
        },
        2 => {
            let k = rng.gen_range(0..=t.actions.len());
            LTrace::faulted(Trace(t.actions.actions()[..k].to_vec()))
        }
        _ => random_ltrace(rng, universe, 3),
    }
}
