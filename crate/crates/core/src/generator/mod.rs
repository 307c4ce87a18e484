//! Seeded generation of well-formed processes and resources, and the
//! operational-versus-denotational cross-check.

mod enumerate;

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::SemConfig;
use crate::error::{Error, Result};
use crate::liveness_sem::{ldenote_at, lobserve};
use crate::resources::{Ownership, Resource, Universe};
use crate::safety_sem::{denote_at, observe_traces, Env};
use crate::syntax::{analyze, safety_check, Chan, ChanExpr, PVar, Prefix, Process, Var};

pub use enumerate::enumerate_processes;

#[derive(Clone, Debug)]
pub struct GenConfig {
    pub universe: Universe,
    pub max_depth: usize,
    pub max_sum_width: usize,
    pub allow_rec: bool,
    pub seed: u64,
    /// Channel variables the generated processes may leave free.
    pub free_vars: Vec<Var>,
}

impl GenConfig {
    pub fn new(universe: Universe, seed: u64) -> Self {
        GenConfig { universe, max_depth: 4, max_sum_width: 2, allow_rec: true, seed, free_vars: Vec::new() }
    }

    pub fn with_depth(mut self, depth: usize) -> Self {
        self.max_depth = depth;
        self
    }

    pub fn with_free_vars(mut self, vars: &[&str]) -> Self {
        self.free_vars = vars.iter().map(Var::new).collect();
        self
    }

    fn validate(&self) -> Result<()> {
        if self.universe.is_empty() {
            return Err(Error::Config("generator universe must be nonempty".into()));
        }
        if self.max_depth == 0 {
            return Err(Error::Config("generator depth must be at least 1".into()));
        }
        Ok(())
    }
}

/// A recursion variable in scope during generation.
#[derive(Clone)]
struct RecVar {
    name: PVar,
    /// Whether a prefix separates the current position from the binder.
    guarded: bool,
    /// Whether a parallel operator separates them.
    under_par: bool,
}

/// A deterministic stream of random processes and resources.
///
/// Recursion bodies are guarded, a recursion variable never occurs beneath
/// a parallel composition inside its own `rec`, and all binders in a
/// process have distinct names.
pub struct Generator {
    cfg: GenConfig,
    rng: ChaCha8Rng,
    fresh: usize,
}

impl Generator {
    pub fn new(cfg: GenConfig) -> Result<Self> {
        cfg.validate()?;
        let rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        Ok(Generator { cfg, rng, fresh: 0 })
    }

    pub fn config(&self) -> &GenConfig {
        &self.cfg
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn process(&mut self) -> Process {
        self.fresh = 0;
        let lo = self.cfg.max_depth.saturating_sub(1).max(1);
        let depth = self.rng.gen_range(lo..=self.cfg.max_depth);
        let scope = self.cfg.free_vars.clone();
        self.gen(depth, &scope, &[])
    }

    /// A resource whose domain contains `required`. Public ownership is
    /// favored since private subjects silence most prefixes.
    pub fn resource_containing(&mut self, required: &BTreeSet<Chan>) -> Resource {
        let mut sigma = Resource::empty();
        for c in self.cfg.universe.chans().to_vec() {
            let roll = self.rng.gen_range(0..10);
            if roll < 2 && !required.contains(&c) {
                continue;
            }
            sigma.insert(c, if roll < 8 { Ownership::Pub } else { Ownership::Pri });
        }
        sigma
    }

    pub fn resource(&mut self) -> Resource {
        self.resource_containing(&BTreeSet::new())
    }

    /// Bound names are picked half the time when any are in scope, so
    /// that restricted channels actually get used.
    fn chan_expr(&mut self, scope: &[Var]) -> ChanExpr {
        if !scope.is_empty() && self.rng.gen_bool(0.5) {
            return ChanExpr::Var(scope.choose(&mut self.rng).expect("nonempty").clone());
        }
        ChanExpr::Const(self.cfg.universe.chans().choose(&mut self.rng).expect("nonempty universe").clone())
    }

    fn fresh_var(&mut self) -> Var {
        self.fresh += 1;
        Var::new(format!("x{}", self.fresh))
    }

    fn fresh_pvar(&mut self) -> PVar {
        self.fresh += 1;
        PVar::new(format!("X{}", self.fresh))
    }

    fn usable(recs: &[RecVar]) -> Vec<PVar> {
        recs.iter().filter(|r| r.guarded && !r.under_par).map(|r| r.name.clone()).collect()
    }

    fn guard(recs: &[RecVar]) -> Vec<RecVar> {
        recs.iter().cloned().map(|r| RecVar { guarded: true, ..r }).collect()
    }

    fn branch(&mut self, depth: usize, scope: &[Var], recs: &[RecVar]) -> (Prefix, Process) {
        let chan = self.chan_expr(scope);
        let inner = Self::guard(recs);
        if self.rng.gen_bool(0.5) {
            let payload = self.chan_expr(scope);
            (Prefix::Send { chan, payload }, self.gen(depth - 1, scope, &inner))
        } else {
            let binder = self.fresh_var();
            let mut scope2 = scope.to_vec();
            scope2.push(binder.clone());
            (Prefix::Recv { chan, binder }, self.gen(depth - 1, &scope2, &inner))
        }
    }

    fn gen(&mut self, depth: usize, scope: &[Var], recs: &[RecVar]) -> Process {
        let vars = Self::usable(recs);
        if depth == 0 {
            if !vars.is_empty() && self.rng.gen_bool(0.5) {
                return Process::PVar(vars.choose(&mut self.rng).expect("nonempty").clone());
            }
            return Process::nil();
        }
        #[derive(Clone, Copy)]
        enum P {
            Nil,
            Prefix,
            Sum,
            IChoice,
            New,
            Par,
            Rec,
            Var,
        }
        let mut options = vec![(P::Nil, 1), (P::Prefix, 8), (P::IChoice, 2), (P::New, 2), (P::Par, 3)];
        if self.cfg.max_sum_width >= 2 {
            options.push((P::Sum, 1));
        }
        if self.cfg.allow_rec {
            options.push((P::Rec, 1));
        }
        if !vars.is_empty() {
            options.push((P::Var, 1));
        }
        let choice = options.choose_weighted(&mut self.rng, |o| o.1).expect("weights").0;
        match choice {
            P::Nil => Process::nil(),
            P::Var => Process::PVar(vars.choose(&mut self.rng).expect("nonempty").clone()),
            P::Prefix => Process::Sum(vec![self.branch(depth, scope, recs)]),
            P::Sum => {
                let width = self.rng.gen_range(2..=self.cfg.max_sum_width);
                Process::Sum((0..width).map(|_| self.branch(depth, scope, recs)).collect())
            }
            P::IChoice => Process::ichoice(self.gen(depth - 1, scope, recs), self.gen(depth - 1, scope, recs)),
            P::Par => {
                let inner: Vec<RecVar> = recs.iter().cloned().map(|r| RecVar { under_par: true, ..r }).collect();
                Process::par(self.gen(depth - 1, scope, &inner), self.gen(depth - 1, scope, &inner))
            }
            P::New => {
                let x = self.fresh_var();
                let mut scope2 = scope.to_vec();
                scope2.push(x.clone());
                Process::new_chan(x, self.gen(depth - 1, &scope2, recs))
            }
            P::Rec => {
                let x = self.fresh_pvar();
                let mut recs2 = recs.to_vec();
                recs2.push(RecVar { name: x.clone(), guarded: false, under_par: false });
                Process::rec(x, self.gen(depth - 1, scope, &recs2))
            }
        }
    }
}

/// One process drawn from `cfg` alone.
pub fn gen_process(cfg: &GenConfig) -> Result<Process> {
    Ok(Generator::new(cfg.clone())?.process())
}

/// One resource over the universe drawn from `seed`.
pub fn gen_resource(universe: &Universe, seed: u64) -> Resource {
    let mut g = Generator::new(GenConfig::new(universe.clone(), seed)).expect("valid config");
    g.resource()
}

fn has_new_under_par(p: &Process, under_par: bool) -> bool {
    match p {
        Process::New(_, b) => under_par || has_new_under_par(b, under_par),
        Process::Par(l, r) => has_new_under_par(l, true) || has_new_under_par(r, true),
        Process::Sum(bs) => bs.iter().any(|(_, q)| has_new_under_par(q, under_par)),
        Process::IChoice(l, r) => has_new_under_par(l, under_par) || has_new_under_par(r, under_par),
        Process::Rec(_, b) => has_new_under_par(b, under_par),
        Process::PVar(_) => false,
    }
}

/// Number of `new` and receive binders, or `None` if one sits under `rec`.
fn binder_demand(p: &Process, under_rec: bool) -> Option<usize> {
    match p {
        Process::New(_, b) => {
            if under_rec {
                None
            } else {
                Some(1 + binder_demand(b, false)?)
            }
        }
        Process::Sum(bs) => {
            let mut n = 0;
            for (pre, q) in bs {
                if matches!(pre, Prefix::Recv { .. }) {
                    if under_rec {
                        return None;
                    }
                    n += 1;
                }
                n += binder_demand(q, under_rec)?;
            }
            Some(n)
        }
        Process::IChoice(l, r) | Process::Par(l, r) => Some(binder_demand(l, under_rec)? + binder_demand(r, under_rec)?),
        Process::Rec(_, b) => binder_demand(b, true),
        Process::PVar(_) => Some(0),
    }
}

/// Whether the universe is large enough that the finite channel supply
/// cannot distinguish the two semantics on this instance: either no
/// component of a parallel composition allocates, or every name the
/// process can ever take into its domain fits into the free channels.
pub fn universe_adequate(p: &Process, sigma: &Resource, universe: &Universe) -> bool {
    if !has_new_under_par(p, false) {
        return true;
    }
    match binder_demand(p, false) {
        Some(n) => sigma.len() + n <= universe.len(),
        None => false,
    }
}

/// Draws `count` closed processes with resources that pass the safety
/// check and [`universe_adequate`].
pub fn safe_corpus(cfg: &GenConfig, count: usize) -> Result<Vec<(Process, Resource)>> {
    let mut g = Generator::new(cfg.clone())?;
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        if attempts > 1000 + 100 * count {
            return Err(Error::GeneratorExhausted(format!("only {} of {count} instances admitted", out.len())));
        }
        let p = g.process();
        let consts = analyze(&p).constants;
        let sigma = g.resource_containing(&consts);
        if safety_check(&sigma, &p)? && universe_adequate(&p, &sigma, &cfg.universe) {
            out.push((p, sigma));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Safety,
    Liveness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CongruenceVerdict {
    Equal,
    Different,
    /// Not checked: the instance fails the safety check, or a liveness set
    /// has undecided prefixes.
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceReport {
    pub verdict: CongruenceVerdict,
    pub op_count: usize,
    pub den_count: usize,
    /// Rendered traces only in the operational result.
    pub only_op: Vec<String>,
    /// Rendered traces only in the denotational result.
    pub only_den: Vec<String>,
}

impl CongruenceReport {
    fn skipped(reason: impl Into<String>) -> Self {
        CongruenceReport {
            verdict: CongruenceVerdict::Skipped(reason.into()),
            op_count: 0,
            den_count: 0,
            only_op: Vec::new(),
            only_den: Vec::new(),
        }
    }

    fn compare(op: BTreeSet<String>, den: BTreeSet<String>) -> Self {
        let only_op: Vec<String> = op.difference(&den).cloned().collect();
        let only_den: Vec<String> = den.difference(&op).cloned().collect();
        let verdict =
            if only_op.is_empty() && only_den.is_empty() { CongruenceVerdict::Equal } else { CongruenceVerdict::Different };
        CongruenceReport { verdict, op_count: op.len(), den_count: den.len(), only_op, only_den }
    }

    pub fn diff_size(&self) -> usize {
        self.only_op.len() + self.only_den.len()
    }
}

/// Compares the operational and denotational semantics of `p` at `sigma`.
pub fn congruence_check(p: &Process, sigma: &Resource, cfg: &SemConfig, mode: Mode) -> Result<CongruenceReport> {
    if !safety_check(sigma, p)? {
        return Ok(CongruenceReport::skipped("safety check fails"));
    }
    match mode {
        Mode::Safety => {
            let op = observe_traces(p, sigma, cfg)?;
            let den = denote_at(p, &Env::empty(), sigma, cfg)?;
            Ok(CongruenceReport::compare(
                op.iter().map(|t| t.to_string()).collect(),
                den.iter().map(|t| t.to_string()).collect(),
            ))
        }
        Mode::Liveness => {
            let op = lobserve(p, sigma, cfg)?;
            let den = ldenote_at(p, &Env::empty(), sigma, cfg)?;
            if op.has_unknown() || den.has_unknown() {
                return Ok(CongruenceReport::skipped("undecided liveness prefixes"));
            }
            Ok(CongruenceReport::compare(
                op.iter().map(|t| t.to_string()).collect(),
                den.iter().map(|t| t.to_string()).collect(),
            ))
        }
    }
}
