//! Canonical concrete syntax. Output always re-parses to the same tree.

use std::fmt::{self, Write};

use super::ast::{Prefix, Process};

const PAR: u8 = 0;
const ICHOICE: u8 = 1;
const SUM: u8 = 2;
const UNARY: u8 = 3;

pub fn print(p: &Process) -> String {
    p.to_string()
}

fn prec(p: &Process) -> u8 {
    match p {
        Process::Par(..) => PAR,
        Process::IChoice(..) => ICHOICE,
        Process::Sum(bs) if bs.len() >= 2 => SUM,
        _ => UNARY,
    }
}

impl fmt::Display for Prefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Prefix::Send { chan, payload } => write!(f, "{chan}!{payload}"),
            Prefix::Recv { chan, binder } => write!(f, "{chan}?({binder})"),
        }
    }
}

/// `rightmost` is true when nothing follows the term at this nesting level,
/// so a binder may extend to the right without parentheses.
fn write_proc<W: Write>(out: &mut W, p: &Process, min_prec: u8, rightmost: bool) -> fmt::Result {
    match p {
        Process::New(..) | Process::Rec(..) if !rightmost => {
            out.write_char('(')?;
            write_proc(out, p, PAR, true)?;
            return out.write_char(')');
        }
        Process::New(x, body) => {
            write!(out, "new {x}. ")?;
            return write_proc(out, body, PAR, true);
        }
        Process::Rec(x, body) => {
            write!(out, "rec {x}. ")?;
            return write_proc(out, body, PAR, true);
        }
        _ => {}
    }
    if prec(p) < min_prec {
        out.write_char('(')?;
        write_proc(out, p, PAR, true)?;
        return out.write_char(')');
    }
    match p {
        Process::Par(l, r) => {
            write_proc(out, l, PAR, false)?;
            out.write_str(" | ")?;
            write_proc(out, r, ICHOICE, rightmost)
        }
        Process::IChoice(l, r) => {
            write_proc(out, l, ICHOICE, false)?;
            out.write_str(" (+) ")?;
            write_proc(out, r, SUM, rightmost)
        }
        Process::Sum(bs) if bs.is_empty() => out.write_char('0'),
        Process::Sum(bs) => {
            for (i, (pi, cont)) in bs.iter().enumerate() {
                if i > 0 {
                    out.write_str(" + ")?;
                }
                write!(out, "{pi}.")?;
                write_proc(out, cont, UNARY, rightmost && i + 1 == bs.len())?;
            }
            Ok(())
        }
        Process::PVar(x) => write!(out, "{x}"),
        Process::New(..) | Process::Rec(..) => unreachable!("handled above"),
    }
}

impl fmt::Display for Process {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_proc(f, self, PAR, true)
    }
}
