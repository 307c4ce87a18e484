//! Graph presentations of the operational and denotational semantics.

pub(crate) mod den;
pub(crate) mod graph;
pub(crate) mod op;
