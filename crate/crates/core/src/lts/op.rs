//! The operational semantics as an observation graph.

use std::rc::Rc;
use std::sync::Arc;

use super::graph::{Edge, Expansion, Lts, Memo};
use crate::error::Result;
use crate::opsem::{blocked_set_closed, res_steps_closed};
use crate::resources::{Action, Resource, Universe};
use crate::syntax::{Chan, Process};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) enum OpNode {
    State(Arc<Process>, Resource),
    /// Between the `νd` and `c!d` halves of an observed bound send.
    Pending(Chan, Chan, Arc<Process>, Resource),
}

pub(crate) struct OpLts {
    universe: Universe,
    /// Whether to report blocking edges.
    liveness: bool,
    memo: Memo<OpNode>,
}

impl OpLts {
    pub fn new(universe: &Universe, liveness: bool) -> Self {
        OpLts { universe: universe.clone(), liveness, memo: Memo::new() }
    }

    pub fn start(p: &Process, sigma: &Resource) -> OpNode {
        OpNode::State(Arc::new(p.clone()), sigma.clone())
    }

    fn expand(&self, n: &OpNode) -> Expansion<OpNode> {
        let (p, sigma) = match n {
            OpNode::Pending(c, d, p, sigma) => {
                let next = OpNode::State(p.clone(), sigma.clone());
                return Expansion { edges: vec![Edge::Act(Action::Send(c.clone(), d.clone()), next)], complete: true };
            }
            OpNode::State(p, sigma) => (p, sigma),
        };
        let mut edges = Vec::new();
        for s in res_steps_closed(p, sigma, &self.universe) {
            let next = Arc::new(s.successor);
            match s.action {
                Action::Tau | Action::Alloc(_) => edges.push(Edge::Silent(OpNode::State(next, s.next_resource))),
                Action::Fault => edges.push(Edge::Fault),
                Action::Send(c, d) if sigma.is_pri(&d) => edges.push(Edge::Act(
                    Action::Alloc(d.clone()),
                    OpNode::Pending(c, d, next, s.next_resource),
                )),
                a => edges.push(Edge::Act(a, OpNode::State(next, s.next_resource))),
            }
        }
        if self.liveness {
            if let Some(dirs) = blocked_set_closed(p, sigma, &self.universe) {
                edges.push(Edge::Blocked(dirs.project(sigma)));
            }
        }
        Expansion { edges, complete: true }
    }
}

impl Lts for OpLts {
    type Node = OpNode;

    fn edges(&self, n: &OpNode) -> Result<Rc<Expansion<OpNode>>> {
        self.memo.get_or_try(n, || Ok(self.expand(n)))
    }

    fn expanded(&self) -> usize {
        self.memo.len()
    }
}
