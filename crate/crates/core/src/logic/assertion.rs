//! Resource assertions: syntax, parsing, printing and satisfaction.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::resources::{Ownership, Resource};
use crate::safety_sem::Env;
use crate::syntax::lexer::{Cursor, Tok};
use crate::syntax::{Chan, ChanExpr, Var};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Assertion {
    True,
    False,
    And(Box<Assertion>, Box<Assertion>),
    Or(Box<Assertion>, Box<Assertion>),
    Star(Box<Assertion>, Box<Assertion>),
    Pub(ChanExpr),
    Pri(ChanExpr),
    Eq(ChanExpr, ChanExpr),
    Neq(ChanExpr, ChanExpr),
}

impl Assertion {
    pub fn and(p: Assertion, q: Assertion) -> Self {
        Assertion::And(Box::new(p), Box::new(q))
    }

    pub fn or(p: Assertion, q: Assertion) -> Self {
        Assertion::Or(Box::new(p), Box::new(q))
    }

    pub fn star(p: Assertion, q: Assertion) -> Self {
        Assertion::Star(Box::new(p), Box::new(q))
    }

    pub fn is_pub(x: &str) -> Self {
        Assertion::Pub(ChanExpr::Var(Var::new(x)))
    }

    pub fn is_pri(x: &str) -> Self {
        Assertion::Pri(ChanExpr::Var(Var::new(x)))
    }

    /// `x known ≜ x pub ∨ x pri`.
    pub fn known(x: &str) -> Self {
        Self::or(Self::is_pub(x), Self::is_pri(x))
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        let mut note = |e: &ChanExpr| {
            if let ChanExpr::Var(x) = e {
                out.insert(x.clone());
            }
        };
        match self {
            Assertion::True | Assertion::False => {}
            Assertion::Pub(e) | Assertion::Pri(e) => note(e),
            Assertion::Eq(a, b) | Assertion::Neq(a, b) => {
                note(a);
                note(b);
            }
            Assertion::And(p, q) | Assertion::Or(p, q) | Assertion::Star(p, q) => {
                p.collect_vars(out);
                q.collect_vars(out);
            }
        }
    }
}

/// `p̂`: every `pri` replaced by `pub`.
pub fn lift_assertion(p: &Assertion) -> Assertion {
    match p {
        Assertion::Pri(e) => Assertion::Pub(e.clone()),
        Assertion::And(a, b) => Assertion::and(lift_assertion(a), lift_assertion(b)),
        Assertion::Or(a, b) => Assertion::or(lift_assertion(a), lift_assertion(b)),
        Assertion::Star(a, b) => Assertion::star(lift_assertion(a), lift_assertion(b)),
        other => other.clone(),
    }
}

fn resolve(e: &ChanExpr, env: &Env) -> Result<Chan> {
    match e {
        ChanExpr::Const(c) => Ok(c.clone()),
        ChanExpr::Var(x) => env.chans.get(x).cloned().ok_or_else(|| Error::UnboundVariable(x.to_string())),
    }
}

/// `ρ, σ ⊨ p`. Ownership atoms are intuitionistic and `∗` splits the
/// domain of `σ` into two disjoint parts.
pub fn eval_assertion(env: &Env, sigma: &Resource, p: &Assertion) -> Result<bool> {
    Ok(match p {
        Assertion::True => true,
        Assertion::False => false,
        Assertion::And(a, b) => eval_assertion(env, sigma, a)? && eval_assertion(env, sigma, b)?,
        Assertion::Or(a, b) => eval_assertion(env, sigma, a)? || eval_assertion(env, sigma, b)?,
        Assertion::Pub(e) => sigma.get(&resolve(e, env)?) == Some(Ownership::Pub),
        Assertion::Pri(e) => sigma.get(&resolve(e, env)?) == Some(Ownership::Pri),
        Assertion::Eq(a, b) => resolve(a, env)? == resolve(b, env)?,
        Assertion::Neq(a, b) => resolve(a, env)? != resolve(b, env)?,
        Assertion::Star(a, b) => {
            let entries: Vec<(Chan, Ownership)> = sigma.iter().map(|(c, o)| (c.clone(), o)).collect();
            for mask in 0u64..(1u64 << entries.len()) {
                let (mut s1, mut s2) = (Resource::empty(), Resource::empty());
                for (i, (c, o)) in entries.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        s1.insert(c.clone(), *o);
                    } else {
                        s2.insert(c.clone(), *o);
                    }
                }
                if eval_assertion(env, &s1, a)? && eval_assertion(env, &s2, b)? {
                    return Ok(true);
                }
            }
            false
        }
    })
}

const OR: u8 = 0;
const AND: u8 = 1;
const STAR: u8 = 2;
const ATOM: u8 = 3;

fn prec(p: &Assertion) -> u8 {
    match p {
        Assertion::Or(a, b) if is_known(a, b).is_some() => ATOM,
        Assertion::Or(..) => OR,
        Assertion::And(..) => AND,
        Assertion::Star(..) => STAR,
        _ => ATOM,
    }
}

fn is_known<'a>(a: &'a Assertion, b: &Assertion) -> Option<&'a ChanExpr> {
    match (a, b) {
        (Assertion::Pub(x), Assertion::Pri(y)) if x == y => Some(x),
        _ => None,
    }
}

fn write_assertion(f: &mut fmt::Formatter<'_>, p: &Assertion, min: u8) -> fmt::Result {
    if prec(p) < min {
        f.write_str("(")?;
        write_assertion(f, p, OR)?;
        return f.write_str(")");
    }
    match p {
        Assertion::True => f.write_str("true"),
        Assertion::False => f.write_str("false"),
        Assertion::Pub(e) => write!(f, "{e}@pub"),
        Assertion::Pri(e) => write!(f, "{e}@pri"),
        Assertion::Eq(a, b) => write!(f, "{a}={b}"),
        Assertion::Neq(a, b) => write!(f, "{a}!={b}"),
        Assertion::Or(a, b) => match is_known(a, b) {
            Some(x) => write!(f, "{x}@known"),
            None => {
                write_assertion(f, a, OR)?;
                f.write_str(" \\/ ")?;
                write_assertion(f, b, AND)
            }
        },
        Assertion::And(a, b) => {
            write_assertion(f, a, AND)?;
            f.write_str(" /\\ ")?;
            write_assertion(f, b, STAR)
        }
        Assertion::Star(a, b) => {
            write_assertion(f, a, STAR)?;
            f.write_str(" * ")?;
            write_assertion(f, b, ATOM)
        }
    }
}

impl fmt::Display for Assertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_assertion(f, self, OR)
    }
}

/// Parses `true false /\ \/ * x@pub x@pri x@known x=y x!=y` with
/// parentheses. `\/` binds loosest, then `/\`, then `*`.
pub fn parse_assertion(text: &str) -> Result<Assertion> {
    let mut cur = Cursor::new(text)?;
    if cur.at_end() {
        return Err(cur.error("empty input, expected an assertion"));
    }
    let p = parse_or(&mut cur)?;
    cur.finish()?;
    Ok(p)
}

fn parse_or(cur: &mut Cursor) -> Result<Assertion> {
    let mut p = parse_and(cur)?;
    while cur.eat(&Tok::Or) {
        p = Assertion::or(p, parse_and(cur)?);
    }
    Ok(p)
}

fn parse_and(cur: &mut Cursor) -> Result<Assertion> {
    let mut p = parse_star(cur)?;
    while cur.eat(&Tok::And) {
        p = Assertion::and(p, parse_star(cur)?);
    }
    Ok(p)
}

fn parse_star(cur: &mut Cursor) -> Result<Assertion> {
    let mut p = parse_atom(cur)?;
    while cur.eat(&Tok::Star) {
        p = Assertion::star(p, parse_atom(cur)?);
    }
    Ok(p)
}

fn parse_atom(cur: &mut Cursor) -> Result<Assertion> {
    let subject = match cur.next() {
        Some(Tok::LParen) => {
            let p = parse_or(cur)?;
            cur.expect(Tok::RParen)?;
            return Ok(p);
        }
        Some(Tok::Lower(w)) if w == "true" => return Ok(Assertion::True),
        Some(Tok::Lower(w)) if w == "false" => return Ok(Assertion::False),
        Some(Tok::Lower(x)) => ChanExpr::Var(Var::new(x)),
        Some(Tok::Const(c)) => ChanExpr::Const(Chan::new(c)),
        _ => return Err(cur.error_prev("expected an assertion")),
    };
    match cur.next() {
        Some(Tok::At) => match cur.next() {
            Some(Tok::Lower(w)) if w == "pub" => Ok(Assertion::Pub(subject)),
            Some(Tok::Lower(w)) if w == "pri" => Ok(Assertion::Pri(subject)),
            Some(Tok::Lower(w)) if w == "known" => {
                Ok(Assertion::or(Assertion::Pub(subject.clone()), Assertion::Pri(subject)))
            }
            _ => Err(cur.error_prev("expected `pub`, `pri` or `known` after `@`")),
        },
        Some(Tok::Eq) => Ok(Assertion::Eq(subject, parse_chan(cur)?)),
        Some(Tok::Neq) => Ok(Assertion::Neq(subject, parse_chan(cur)?)),
        _ => Err(cur.error_prev("expected `@`, `=` or `!=` after a channel")),
    }
}

fn parse_chan(cur: &mut Cursor) -> Result<ChanExpr> {
    match cur.next() {
        Some(Tok::Lower(x)) => Ok(ChanExpr::Var(Var::new(x))),
        Some(Tok::Const(c)) => Ok(ChanExpr::Const(Chan::new(c))),
        _ => Err(cur.error_prev("expected a channel")),
    }
}

impl std::str::FromStr for Assertion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_assertion(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resources::Ownership::*;

    #[test]
    fn satisfaction() {
        let env = Env::empty().with_chan("x", "c").with_chan("y", "d");
        let s = Resource::from_pairs([("c", Pub), ("d", Pri)]);
        assert!(eval_assertion(&env, &s, &parse_assertion("x@pub").unwrap()).unwrap());
        assert!(eval_assertion(&env, &s, &parse_assertion("x@pub * y@pri").unwrap()).unwrap());
        assert!(!eval_assertion(&env, &s, &parse_assertion("x@pub * x@pub").unwrap()).unwrap());
        assert!(eval_assertion(&env, &s, &parse_assertion("x@pub /\\ x@known").unwrap()).unwrap());
        assert!(eval_assertion(&env, &s, &Assertion::True).unwrap());
        assert!(eval_assertion(&env, &s, &parse_assertion("x!=y /\\ x=x").unwrap()).unwrap());
        assert!(eval_assertion(&Env::empty(), &s, &parse_assertion("z@pub").unwrap()).is_err());
    }

    #[test]
    fn lifting() {
        assert_eq!(lift_assertion(&Assertion::is_pri("x")), Assertion::is_pub("x"));
        assert_eq!(
            lift_assertion(&parse_assertion("x@pri * y@pub").unwrap()),
            parse_assertion("x@pub * y@pub").unwrap()
        );
    }

    #[test]
    fn round_trip() {
        for src in ["true", "x@known", "x@pri /\\ y@known", "(x@pub \\/ y@pub) * z=#c", "x!=y \\/ false /\\ true"] {
            let p = parse_assertion(src).unwrap();
            assert_eq!(parse_assertion(&p.to_string()).unwrap(), p, "{src}");
        }
        assert!(parse_assertion("x@").is_err());
        assert!(parse_assertion("").is_err());
        assert!(parse_assertion("x@pub /\\").is_err());
    }
}
