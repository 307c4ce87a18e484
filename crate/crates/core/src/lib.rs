//! A workbench for a resource-aware π-calculus: syntax, operational and
//! denotational trace semantics for safety and liveness, and a small
//! refinement logic over resources.

pub mod cli;
pub mod config;
pub mod error;
pub mod generator;
pub mod liveness_sem;
pub mod logic;
pub(crate) mod lts;
pub mod opsem;
pub mod resources;
pub mod safety_sem;
pub mod syntax;

pub use error::{Error, Result};
