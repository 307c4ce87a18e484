use std::collections::BTreeMap;
use std::sync::Arc;

use super::{Behavior, Env, ProcBinding, TraceSet};
use crate::config::SemConfig;
use crate::error::Result;
use crate::lts::den::DenLts;
use crate::lts::graph::safety_traces;
use crate::lts::op::OpLts;
use crate::resources::Resource;
use crate::syntax::{check_constants, ensure_closed, PVar, Process};

/// `O⟦p⟧σ` up to `cfg.depth` observable actions.
pub fn observe_traces(p: &Process, sigma: &Resource, cfg: &SemConfig) -> Result<TraceSet> {
    ensure_closed(p)?;
    check_constants(p, &cfg.universe)?;
    let lts = OpLts::new(&cfg.universe, false);
    safety_traces(&lts, &OpLts::start(p, sigma), cfg.depth, cfg.silent_budget)
}

/// `O⟦p⟧` tabulated over every resource of the universe.
pub fn observe_behavior(p: &Process, cfg: &SemConfig) -> Result<Behavior> {
    ensure_closed(p)?;
    check_constants(p, &cfg.universe)?;
    let lts = OpLts::new(&cfg.universe, false);
    Behavior::try_tabulate(&cfg.universe, cfg.depth, |sigma| {
        safety_traces(&lts, &OpLts::start(p, sigma), cfg.depth, cfg.silent_budget)
    })
}

/// `⟦p⟧ρσ`.
pub fn denote_at(p: &Process, env: &Env, sigma: &Resource, cfg: &SemConfig) -> Result<TraceSet> {
    check_constants(p, &cfg.universe)?;
    let mut lts = DenLts::new(&cfg.universe, false, cfg.state_budget);
    let start = lts.start(p, env, sigma)?;
    safety_traces(&lts, &start, cfg.depth, cfg.silent_budget)
}

/// `⟦p⟧ρσ` for each of `sigmas`, sharing one exploration cache.
pub(crate) fn denote_many(p: &Process, env: &Env, sigmas: &[Resource], cfg: &SemConfig) -> Result<Vec<TraceSet>> {
    check_constants(p, &cfg.universe)?;
    let mut lts = DenLts::new(&cfg.universe, false, cfg.state_budget);
    let starts = sigmas.iter().map(|s| lts.start(p, env, s)).collect::<Result<Vec<_>>>()?;
    starts.iter().map(|n| safety_traces(&lts, n, cfg.depth, cfg.silent_budget)).collect()
}

/// `⟦p⟧ρ` tabulated over every resource of the universe.
pub fn denote(p: &Process, env: &Env, cfg: &SemConfig) -> Result<Behavior> {
    check_constants(p, &cfg.universe)?;
    let mut lts = DenLts::new(&cfg.universe, false, cfg.state_budget);
    let mut starts = BTreeMap::new();
    for sigma in cfg.universe.all_resources() {
        let n = lts.start(p, env, &sigma)?;
        starts.insert(sigma, n);
    }
    Behavior::try_tabulate(&cfg.universe, cfg.depth, |sigma| {
        safety_traces(&lts, &starts[sigma], cfg.depth, cfg.silent_budget)
    })
}

/// The Kleene chain `⊥, F(⊥), F(F(⊥)), …` of `F(B) = ⟦body⟧ρ[x ↦ B]`,
/// starting from `λσ.{ε}` and ending at the first repeated element, which is
/// the least fixpoint `⟦rec x. body⟧ρ`.
pub fn kleene_iterates(x: &PVar, body: &Process, env: &Env, cfg: &SemConfig) -> Result<Vec<Behavior>> {
    let mut chain = vec![Behavior::unit(&cfg.universe, cfg.depth)];
    loop {
        let last = chain.last().expect("nonempty").clone();
        let mut env2 = env.clone();
        env2.procs.insert(x.clone(), ProcBinding::Behavior(Arc::new(last.clone())));
        let next = denote(body, &env2, cfg)?;
        if next == last {
            return Ok(chain);
        }
        chain.push(next);
    }
}
