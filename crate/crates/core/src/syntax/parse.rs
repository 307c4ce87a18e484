//! Recursive-descent parser for the concrete process syntax.
//!
//! Operators from tightest to loosest: prefix `.`, external choice `+`,
//! internal choice `(+)`, parallel `|`. `new x. P` and `rec X. P` extend as
//! far right as possible. A prefix written without a continuation (`#c!#d`)
//! continues as `0`.

use super::ast::{Chan, ChanExpr, PVar, Prefix, Process, Var};
use super::lexer::{Cursor, Tok};
use super::names::analyze;
use crate::error::{Error, Result};
use crate::resources::Universe;

pub fn parse(text: &str) -> Result<Process> {
    let mut cur = Cursor::new(text)?;
    if cur.at_end() {
        return Err(cur.error("empty input, expected a process"));
    }
    let p = parse_par(&mut cur)?;
    cur.finish()?;
    Ok(p)
}

/// Parses and additionally rejects constants outside `universe`.
pub fn parse_in(text: &str, universe: &Universe) -> Result<Process> {
    let p = parse(text)?;
    check_constants(&p, universe)?;
    Ok(p)
}

pub fn check_constants(p: &Process, universe: &Universe) -> Result<()> {
    match analyze(p).constants.into_iter().find(|c| !universe.contains(c)) {
        Some(c) => Err(Error::OutsideUniverse(c.as_str().to_string())),
        None => Ok(()),
    }
}

pub(crate) fn parse_par(cur: &mut Cursor) -> Result<Process> {
    let mut left = parse_ichoice(cur)?;
    while cur.eat(&Tok::Bar) {
        let right = parse_ichoice(cur)?;
        left = Process::par(left, right);
    }
    Ok(left)
}

fn parse_ichoice(cur: &mut Cursor) -> Result<Process> {
    let mut left = parse_sum(cur)?;
    while cur.eat(&Tok::IPlus) {
        let right = parse_sum(cur)?;
        left = Process::ichoice(left, right);
    }
    Ok(left)
}

fn parse_sum(cur: &mut Cursor) -> Result<Process> {
    let first = parse_unary(cur)?;
    if cur.peek() != Some(&Tok::Plus) {
        return Ok(first);
    }
    let mut branches = Vec::new();
    push_branch(cur, &mut branches, first)?;
    while cur.eat(&Tok::Plus) {
        let next = parse_unary(cur)?;
        push_branch(cur, &mut branches, next)?;
    }
    Ok(Process::Sum(branches))
}

fn push_branch(cur: &Cursor, branches: &mut Vec<(Prefix, Process)>, p: Process) -> Result<()> {
    match p {
        Process::Sum(mut bs) if bs.len() == 1 => {
            branches.push(bs.pop().expect("one branch"));
            Ok(())
        }
        _ => Err(cur.error_prev("operands of `+` must be prefixed processes")),
    }
}

fn parse_unary(cur: &mut Cursor) -> Result<Process> {
    match cur.peek() {
        Some(Tok::New) => {
            cur.next();
            let binder = match cur.next() {
                Some(Tok::Lower(x)) => Var::new(x),
                _ => return Err(cur.error_prev("`new` must bind a lowercase channel variable")),
            };
            cur.expect(Tok::Dot)?;
            Ok(Process::new_chan(binder, parse_par(cur)?))
        }
        Some(Tok::Rec) => {
            cur.next();
            let binder = match cur.next() {
                Some(Tok::Upper(x)) => PVar::new(x),
                _ => return Err(cur.error_prev("`rec` must bind an uppercase process variable")),
            };
            cur.expect(Tok::Dot)?;
            Ok(Process::rec(binder, parse_par(cur)?))
        }
        Some(Tok::Zero) => {
            cur.next();
            Ok(Process::nil())
        }
        Some(Tok::Upper(_)) => match cur.next() {
            Some(Tok::Upper(x)) => Ok(Process::PVar(PVar::new(x))),
            _ => unreachable!(),
        },
        Some(Tok::LParen) => {
            cur.next();
            let p = parse_par(cur)?;
            cur.expect(Tok::RParen)?;
            Ok(p)
        }
        Some(Tok::Const(_)) | Some(Tok::Lower(_)) => parse_prefixed(cur),
        _ => Err(cur.unexpected("a process")),
    }
}

fn parse_chan_expr(cur: &mut Cursor) -> Result<ChanExpr> {
    match cur.peek() {
        Some(Tok::Const(_)) | Some(Tok::Lower(_)) => match cur.next() {
            Some(Tok::Const(c)) => Ok(ChanExpr::Const(Chan::new(c))),
            Some(Tok::Lower(x)) => Ok(ChanExpr::Var(Var::new(x))),
            _ => unreachable!(),
        },
        _ => Err(cur.unexpected("a channel (`#name` or variable)")),
    }
}

fn parse_prefixed(cur: &mut Cursor) -> Result<Process> {
    let chan = parse_chan_expr(cur)?;
    let prefix = match cur.next() {
        Some(Tok::Bang) => Prefix::Send { chan, payload: parse_chan_expr(cur)? },
        Some(Tok::Quest) => {
            cur.expect(Tok::LParen)?;
            let binder = match cur.next() {
                Some(Tok::Lower(x)) => Var::new(x),
                _ => return Err(cur.error_prev("receive must bind a lowercase channel variable")),
            };
            cur.expect(Tok::RParen)?;
            Prefix::Recv { chan, binder }
        }
        _ => return Err(cur.error_prev("expected `!` or `?` after channel")),
    };
    let cont = if cur.eat(&Tok::Dot) { parse_unary(cur)? } else { Process::nil() };
    Ok(Process::Sum(vec![(prefix, cont)]))
}

impl std::str::FromStr for Process {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::ast::{cst, var};

    #[test]
    fn inert() {
        assert_eq!(parse("0").unwrap(), Process::nil());
    }

    #[test]
    fn new_send() {
        let p = parse("new x. #c!x.0").unwrap();
        let expected = Process::new_chan(Var::new("x"), Process::send(cst("c"), var("x"), Process::nil()));
        assert_eq!(p, expected);
    }

    #[test]
    fn rec_recv() {
        let p = parse("rec X. #c?(y).X").unwrap();
        let expected =
            Process::rec(PVar::new("X"), Process::recv(cst("c"), Var::new("y"), Process::PVar(PVar::new("X"))));
        assert_eq!(p, expected);
    }

    #[test]
    fn precedence() {
        let p = parse("#a!#b.0 + #a?(x).0 (+) 0 | 0").unwrap();
        match p {
            Process::Par(l, r) => {
                assert!(r.is_nil());
                match *l {
                    Process::IChoice(s, z) => {
                        assert!(z.is_nil());
                        assert!(matches!(*s, Process::Sum(ref bs) if bs.len() == 2));
                    }
                    other => panic!("unexpected {other:?}"),
                }
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn binders_extend_right() {
        let p = parse("new x. #c!x.0 | #c?(y).0").unwrap();
        assert!(matches!(p, Process::New(_, ref b) if matches!(**b, Process::Par(..))));
        let q = parse("(new x. #c!x.0) | #c?(y).0").unwrap();
        assert!(matches!(q, Process::Par(..)));
    }

    #[test]
    fn sum_of_sums_rejected() {
        assert!(matches!(parse("(#a!#a.0 + #b!#b.0) + #c!#c.0"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("0 + #c!#c.0"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn comments_and_positions() {
        let p = parse("-- a comment\n#c!#d.0 -- trailing\n").unwrap();
        assert_eq!(p, Process::send(cst("c"), cst("d"), Process::nil()));
        match parse("#c!#d.\n  |") {
            Err(Error::Syntax { line, col, .. }) => assert_eq!((line, col), (2, 3)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn lexical_errors() {
        assert!(matches!(parse("#!"), Err(Error::Lexical { .. })));
        assert!(matches!(parse("12"), Err(Error::Lexical { .. })));
        assert!(matches!(parse("_x!#c"), Err(Error::Lexical { .. })));
        assert!(matches!(parse("#c!#d.0 $"), Err(Error::Lexical { line: 1, col: 9, .. })));
    }

    #[test]
    fn binder_kinds_checked() {
        assert!(parse("new X. 0").is_err());
        assert!(parse("rec x. 0").is_err());
        assert!(parse("#c?(#d).0").is_err());
    }

    #[test]
    fn universe_check() {
        let u = Universe::new(["c"]);
        assert!(parse_in("#c!#c.0", &u).is_ok());
        assert_eq!(parse_in("#c!#d.0", &u), Err(Error::OutsideUniverse("d".into())));
    }
}
