//! Bounded checking of `Γ ⊨ p ▷ P ⊑ Q`.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::assertion::{eval_assertion, Assertion};
use crate::config::SemConfig;
use crate::error::{Error, Result};
use crate::resources::{Resource, Universe};
use crate::safety_sem::{denote_many, Env, ProcBinding, Trace};
use crate::syntax::{analyze, Chan, PVar, Process, Var};

/// Default cap on the number of `(ρ, σ)` pairs a single check may visit.
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

/// `p ▷ X ⊑ P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContextEntry {
    pub assertion: Assertion,
    pub var: PVar,
    pub bound: Process,
}

/// Hypotheses about process variables. Later entries shadow earlier ones.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Context {
    pub entries: Vec<ContextEntry>,
}

impl Context {
    pub fn empty() -> Self {
        Context::default()
    }

    pub fn with(mut self, assertion: Assertion, var: &str, bound: Process) -> Self {
        self.entries.push(ContextEntry { assertion, var: PVar::new(var), bound });
        self
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        for e in &self.entries {
            out.extend(e.assertion.free_vars());
            out.extend(analyze(&e.bound).free_chan_vars);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// Channel assignment of the failing instance.
    pub chans: Vec<(Var, Chan)>,
    pub sigma: Resource,
    /// Minimal trace of `P` missing from `Q`.
    pub trace: Trace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinementVerdict {
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
    /// `(ρ, σ)` pairs at which the assertion held and traces were compared.
    pub instances: usize,
}

#[derive(Clone, Debug)]
pub struct RefineConfig {
    pub sem: SemConfig,
    pub cap: usize,
}

impl RefineConfig {
    pub fn new(universe: Universe, depth: usize) -> Self {
        RefineConfig { sem: SemConfig::new(universe, depth), cap: DEFAULT_ENUMERATION_CAP }
    }
}

/// Every assignment of the given variables to channels of `universe`.
pub(crate) fn assignments(vars: &BTreeSet<Var>, universe: &Universe) -> Vec<Vec<(Var, Chan)>> {
    let mut out = vec![Vec::new()];
    for x in vars {
        let mut next = Vec::with_capacity(out.len() * universe.len());
        for partial in &out {
            for c in universe.chans() {
                let mut a: Vec<(Var, Chan)> = partial.clone();
                a.push((x.clone(), c.clone()));
                next.push(a);
            }
        }
        out = next;
    }
    out
}

fn env_of(assignment: &[(Var, Chan)]) -> Env {
    let mut env = Env::empty();
    for (x, c) in assignment {
        env.chans.insert(x.clone(), c.clone());
    }
    env
}

fn guard_size(n_envs: usize, n_res: usize, cap: usize) -> Result<()> {
    let size = n_envs.saturating_mul(n_res);
    if size > cap {
        Err(Error::EnumerationCap { size, cap })
    } else {
        Ok(())
    }
}

/// Checks `Γ ⊨ p ▷ P ⊑ Q` over every channel assignment and resource
/// within the universe.
///
/// Each hypothesis `q ▷ X ⊑ R` is instantiated by the greatest behavior it
/// permits: `⟦R⟧ρσ` where `ρ, σ ⊨ q`, and every trace elsewhere. Since the
/// denotation is monotone in `X`, the check is exact for the given bounds.
pub fn check_refinement(
    gamma: &Context,
    p: &Assertion,
    lhs: &Process,
    rhs: &Process,
    cfg: &RefineConfig,
) -> Result<RefinementVerdict> {
    let universe = &cfg.sem.universe;
    let mut vars = p.free_vars();
    vars.extend(gamma.free_vars());
    for side in [lhs, rhs] {
        let names = analyze(side);
        vars.extend(names.free_chan_vars);
        if let Some(x) = names.free_proc_vars.iter().find(|x| !gamma.entries.iter().any(|e| &e.var == *x)) {
            return Err(Error::UnboundVariable(x.to_string()));
        }
    }
    let envs = assignments(&vars, universe);
    let resources = universe.all_resources();
    guard_size(envs.len(), resources.len(), cfg.cap)?;
    let mut instances = 0;
    for a in envs {
        let mut env = env_of(&a);
        for entry in &gamma.entries {
            let mut holds_at = BTreeSet::new();
            for s in &resources {
                if eval_assertion(&env, s, &entry.assertion)? {
                    holds_at.insert(s.clone());
                }
            }
            env.procs.insert(
                entry.var.clone(),
                ProcBinding::Bounded { bound: entry.bound.clone(), holds_at: Arc::new(holds_at) },
            );
        }
        let mut sat = Vec::new();
        for s in &resources {
            if eval_assertion(&env, s, p)? {
                sat.push(s.clone());
            }
        }
        if sat.is_empty() {
            continue;
        }
        instances += sat.len();
        let left = denote_many(lhs, &env, &sat, &cfg.sem)?;
        let right = denote_many(rhs, &env, &sat, &cfg.sem)?;
        for ((s, l), r) in sat.iter().zip(&left).zip(&right) {
            if let Some(t) = l.difference(r).min_by_key(|t| (t.len(), (*t).clone())) {
                return Ok(RefinementVerdict {
                    holds: false,
                    counterexample: Some(Counterexample { chans: a, sigma: s.clone(), trace: t.clone() }),
                    instances,
                });
            }
        }
    }
    Ok(RefinementVerdict { holds: true, counterexample: None, instances })
}

/// `p ⊨ q`: every `(ρ, σ)` within the universe satisfying `p` satisfies `q`.
pub fn entails(p: &Assertion, q: &Assertion, universe: &Universe) -> Result<bool> {
    let mut vars = p.free_vars();
    vars.extend(q.free_vars());
    for a in assignments(&vars, universe) {
        let env = env_of(&a);
        for s in universe.all_resources() {
            if eval_assertion(&env, &s, p)? && !eval_assertion(&env, &s, q)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
