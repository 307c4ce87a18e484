//! Process syntax: abstract and concrete forms, substitution, and name analysis.

pub mod ast;
pub(crate) mod lexer;
pub mod names;
pub mod parse;
pub mod print;
pub mod subst;

pub use ast::{cst, var, Chan, ChanExpr, PVar, Prefix, Process, Var};
pub use names::{all_chan_vars, analyze, ensure_closed, safety_check, NameReport};
pub use parse::{check_constants, parse, parse_in};
pub use print::print;
pub use subst::{subst_chan, subst_chan_expr, subst_proc, substitute, unfold, Subst};
