//! Safety traces: operational observation, the compositional denotational
//! semantics, and the semantic operators on behavior tables.

mod denote;
mod ops;
mod trace;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::resources::Resource;
use crate::syntax::{Chan, PVar, Process, Var};

pub(crate) use denote::denote_many;
pub use denote::{denote, denote_at, kleene_iterates, observe_behavior, observe_traces};
pub use ops::{interleave_traces, join_behaviors, parallel_behaviors, prefix_behavior};
pub use trace::{Behavior, Trace, TraceSet};

/// What a process variable stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProcBinding {
    /// A process, interpreted under the channel part of the same environment.
    Process(Process),
    /// A fixed behavior table (safety semantics only).
    Behavior(Arc<Behavior>),
    /// The greatest behavior below `bound` at the listed resources: it acts
    /// as `bound` there and allows every trace elsewhere (safety semantics
    /// only).
    Bounded { bound: Process, holds_at: Arc<BTreeSet<Resource>> },
}

/// An environment ρ for open processes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Env {
    pub chans: BTreeMap<Var, Chan>,
    pub procs: BTreeMap<PVar, ProcBinding>,
}

impl Env {
    pub fn empty() -> Self {
        Env::default()
    }

    pub fn with_chan(mut self, x: &str, c: &str) -> Self {
        self.chans.insert(Var::new(x), Chan::new(c));
        self
    }

    pub fn with_proc(mut self, x: &str, b: ProcBinding) -> Self {
        self.procs.insert(PVar::new(x), b);
        self
    }
}
