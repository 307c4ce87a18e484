use super::ast::{Chan, ChanExpr, PVar, Prefix, Process, Var};

/// A single substitution. Replacements are closed, so no capture can occur.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subst {
    Chan(Var, Chan),
    Proc(PVar, Process),
}

pub fn substitute(p: &Process, s: &Subst) -> Process {
    match s {
        Subst::Chan(x, c) => subst_chan(p, x, c),
        Subst::Proc(x, q) => subst_proc(p, x, q),
    }
}

fn subst_expr(e: &ChanExpr, x: &Var, r: &ChanExpr) -> ChanExpr {
    match e {
        ChanExpr::Var(y) if y == x => r.clone(),
        other => other.clone(),
    }
}

/// `p{c/x}`.
pub fn subst_chan(p: &Process, x: &Var, c: &Chan) -> Process {
    subst_chan_expr(p, x, &ChanExpr::Const(c.clone()))
}

/// A variant of `binder` that differs from `avoid` and from every
/// variable occurring in `body`.
fn fresh_binder(binder: &Var, avoid: &Var, body: &Process) -> Var {
    let used = super::names::all_chan_vars(body);
    (1..)
        .map(|i| Var::new(format!("{binder}_{i}")))
        .find(|v| v != avoid && !used.contains(v))
        .expect("unbounded supply of names")
}

/// `p{r/x}` where `r` may itself be a variable; binders that would
/// capture `r` are renamed.
pub fn subst_chan_expr(p: &Process, x: &Var, r: &ChanExpr) -> Process {
    let captures = |b: &Var| matches!(r, ChanExpr::Var(v) if v == b);
    match p {
        Process::Sum(branches) => Process::Sum(
            branches
                .iter()
                .map(|(prefix, cont)| match prefix {
                    Prefix::Send { chan, payload } => (
                        Prefix::Send { chan: subst_expr(chan, x, r), payload: subst_expr(payload, x, r) },
                        subst_chan_expr(cont, x, r),
                    ),
                    Prefix::Recv { chan, binder } => {
                        let chan = subst_expr(chan, x, r);
                        if binder == x {
                            (Prefix::Recv { chan, binder: binder.clone() }, cont.clone())
                        } else if captures(binder) {
                            let b2 = fresh_binder(binder, x, cont);
                            let renamed = subst_chan_expr(cont, binder, &ChanExpr::Var(b2.clone()));
                            (Prefix::Recv { chan, binder: b2 }, subst_chan_expr(&renamed, x, r))
                        } else {
                            (Prefix::Recv { chan, binder: binder.clone() }, subst_chan_expr(cont, x, r))
                        }
                    }
                })
                .collect(),
        ),
        Process::IChoice(l, rt) => Process::ichoice(subst_chan_expr(l, x, r), subst_chan_expr(rt, x, r)),
        Process::Par(l, rt) => Process::par(subst_chan_expr(l, x, r), subst_chan_expr(rt, x, r)),
        Process::New(y, _) if y == x => p.clone(),
        Process::New(y, body) if captures(y) => {
            let y2 = fresh_binder(y, x, body);
            let renamed = subst_chan_expr(body, y, &ChanExpr::Var(y2.clone()));
            Process::new_chan(y2, subst_chan_expr(&renamed, x, r))
        }
        Process::New(y, body) => Process::new_chan(y.clone(), subst_chan_expr(body, x, r)),
        Process::Rec(y, body) => Process::rec(y.clone(), subst_chan_expr(body, x, r)),
        Process::PVar(_) => p.clone(),
    }
}

/// `p{q/x}` for a closed replacement `q`.
pub fn subst_proc(p: &Process, x: &PVar, q: &Process) -> Process {
    match p {
        Process::Sum(branches) => Process::Sum(
            branches.iter().map(|(prefix, cont)| (prefix.clone(), subst_proc(cont, x, q))).collect(),
        ),
        Process::IChoice(l, r) => Process::ichoice(subst_proc(l, x, q), subst_proc(r, x, q)),
        Process::Par(l, r) => Process::par(subst_proc(l, x, q), subst_proc(r, x, q)),
        Process::New(y, body) => Process::new_chan(y.clone(), subst_proc(body, x, q)),
        Process::Rec(y, _) if y == x => p.clone(),
        Process::Rec(y, body) => Process::rec(y.clone(), subst_proc(body, x, q)),
        Process::PVar(y) if y == x => q.clone(),
        Process::PVar(_) => p.clone(),
    }
}

/// One unfolding of `rec X. body`: `body{rec X. body / X}`.
pub fn unfold(binder: &PVar, body: &Process) -> Process {
    let whole = Process::rec(binder.clone(), body.clone());
    subst_proc(body, binder, &whole)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse::parse;

    #[test]
    fn chan_substitution() {
        let p = parse("x!x.0").unwrap();
        let out = substitute(&p, &Subst::Chan(Var::new("x"), Chan::new("c")));
        assert_eq!(out, parse("#c!#c.0").unwrap());
        assert_eq!(substitute(&Process::nil(), &Subst::Chan(Var::new("x"), Chan::new("c"))), Process::nil());
    }

    #[test]
    fn binders_shadow() {
        let p = parse("x!x.(new x. x!x.0) | x?(x).x!x.0").unwrap();
        let out = subst_chan(&p, &Var::new("x"), &Chan::new("c"));
        assert_eq!(out, parse("#c!#c.(new x. x!x.0) | #c?(x).x!x.0").unwrap());
    }

    #[test]
    fn proc_substitution() {
        let body = parse("#c!#c.X").unwrap();
        let whole = Process::rec(PVar::new("X"), body.clone());
        let out = substitute(&Process::PVar(PVar::new("X")), &Subst::Proc(PVar::new("X"), whole.clone()));
        assert_eq!(out, whole);
        assert_eq!(unfold(&PVar::new("X"), &body), parse("#c!#c.rec X. #c!#c.X").unwrap());
        let shadowed = parse("rec X. X").unwrap();
        assert_eq!(subst_proc(&shadowed, &PVar::new("X"), &Process::nil()), shadowed);
    }

    #[test]
    fn variable_substitution_avoids_capture() {
        let p = parse("new y. z!y.0").unwrap();
        let q = subst_chan_expr(&p, &Var::new("z"), &ChanExpr::Var(Var::new("y")));
        assert_eq!(q, parse("new y_1. y!y_1.0").unwrap());
        let p = parse("#c?(y).z!y.0 | z?(w).0").unwrap();
        let q = subst_chan_expr(&p, &Var::new("z"), &ChanExpr::Var(Var::new("y")));
        assert_eq!(q, parse("#c?(y_1).y!y_1.0 | y?(w).0").unwrap());
    }
}
