use std::fmt;
use std::sync::Arc;

macro_rules! name_type {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(Arc<str>);

        impl $name {
            pub fn new(name: impl AsRef<str>) -> Self {
                $name(Arc::from(name.as_ref()))
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self)
            }
        }
    };
}

name_type!(
    /// A channel constant, written `#name` in concrete syntax.
    Chan
);
name_type!(
    /// A channel variable (lowercase identifier).
    Var
);
name_type!(
    /// A process variable (uppercase identifier).
    PVar
);

impl fmt::Display for Chan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for PVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ChanExpr {
    Var(Var),
    Const(Chan),
}

impl fmt::Display for ChanExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChanExpr::Var(v) => v.fmt(f),
            ChanExpr::Const(c) => c.fmt(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Prefix {
    Send { chan: ChanExpr, payload: ChanExpr },
    Recv { chan: ChanExpr, binder: Var },
}

impl Prefix {
    pub fn subject(&self) -> &ChanExpr {
        match self {
            Prefix::Send { chan, .. } | Prefix::Recv { chan, .. } => chan,
        }
    }
}

/// Process terms. `Sum(vec![])` is the inert process `0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Process {
    Sum(Vec<(Prefix, Process)>),
    IChoice(Box<Process>, Box<Process>),
    New(Var, Box<Process>),
    Par(Box<Process>, Box<Process>),
    Rec(PVar, Box<Process>),
    PVar(PVar),
}

impl Process {
    pub fn nil() -> Self {
        Process::Sum(Vec::new())
    }

    pub fn is_nil(&self) -> bool {
        matches!(self, Process::Sum(b) if b.is_empty())
    }

    pub fn send(chan: ChanExpr, payload: ChanExpr, cont: Process) -> Self {
        Process::Sum(vec![(Prefix::Send { chan, payload }, cont)])
    }

    pub fn recv(chan: ChanExpr, binder: Var, cont: Process) -> Self {
        Process::Sum(vec![(Prefix::Recv { chan, binder }, cont)])
    }

    pub fn ichoice(left: Process, right: Process) -> Self {
        Process::IChoice(Box::new(left), Box::new(right))
    }

    pub fn par(left: Process, right: Process) -> Self {
        Process::Par(Box::new(left), Box::new(right))
    }

    pub fn new_chan(binder: Var, body: Process) -> Self {
        Process::New(binder, Box::new(body))
    }

    pub fn rec(binder: PVar, body: Process) -> Self {
        Process::Rec(binder, Box::new(body))
    }

    /// Number of AST nodes, prefixes counted once per branch.
    pub fn size(&self) -> usize {
        match self {
            Process::Sum(bs) => 1 + bs.iter().map(|(_, p)| p.size()).sum::<usize>(),
            Process::IChoice(l, r) | Process::Par(l, r) => 1 + l.size() + r.size(),
            Process::New(_, p) | Process::Rec(_, p) => 1 + p.size(),
            Process::PVar(_) => 1,
        }
    }

    /// Nesting depth; leaves (`0` and process variables) have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Process::Sum(bs) if bs.is_empty() => 0,
            Process::Sum(bs) => 1 + bs.iter().map(|(_, p)| p.depth()).max().unwrap_or(0),
            Process::IChoice(l, r) | Process::Par(l, r) => 1 + l.depth().max(r.depth()),
            Process::New(_, p) | Process::Rec(_, p) => 1 + p.depth(),
            Process::PVar(_) => 0,
        }
    }
}

/// Shorthand for a channel-constant expression.
pub fn cst(name: &str) -> ChanExpr {
    ChanExpr::Const(Chan::new(name))
}

/// Shorthand for a channel-variable expression.
pub fn var(name: &str) -> ChanExpr {
    ChanExpr::Var(Var::new(name))
}
