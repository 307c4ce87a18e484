//! Sampled soundness checks for the displayed proof rules, the Hoare
//! reading of send, and the interference-free expansion law.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::assertion::{eval_assertion, lift_assertion, Assertion};
use super::refine::{assignments, check_refinement, entails, Context, RefineConfig};
use crate::error::{Error, Result};
use crate::generator::{GenConfig, Generator};
use crate::resources::{apply_action, Action, Universe, Verdict};
use crate::safety_sem::Env;
use crate::syntax::{subst_chan_expr, ChanExpr, PVar, Prefix, Process, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    SendPub,
    SendPri,
    RecvPub,
    RecvPri,
    New,
    Par,
    Hypothesis,
    RecInduction,
    Consequence,
}

impl Rule {
    pub const ALL: [Rule; 9] = [
        Rule::SendPub,
        Rule::SendPri,
        Rule::RecvPub,
        Rule::RecvPri,
        Rule::New,
        Rule::Par,
        Rule::Hypothesis,
        Rule::RecInduction,
        Rule::Consequence,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Rule::SendPub => "send-pub",
            Rule::SendPri => "send-pri",
            Rule::RecvPub => "recv-pub",
            Rule::RecvPri => "recv-pri",
            Rule::New => "new",
            Rule::Par => "par",
            Rule::Hypothesis => "hyp",
            Rule::RecInduction => "rec",
            Rule::Consequence => "consequence",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Rule::ALL
            .into_iter()
            .find(|r| r.id() == s)
            .ok_or_else(|| Error::Config(format!("unknown rule `{s}`")))
    }
}

/// `Γ ⊢ p ▷ P ⊑ Q`.
#[derive(Clone, Debug)]
pub struct Judgement {
    pub gamma: Context,
    pub assertion: Assertion,
    pub lhs: Process,
    pub rhs: Process,
}

impl Judgement {
    fn new(gamma: Context, assertion: Assertion, lhs: Process, rhs: Process) -> Self {
        Judgement { gamma, assertion, lhs, rhs }
    }

    fn plain(assertion: Assertion, lhs: Process, rhs: Process) -> Self {
        Self::new(Context::empty(), assertion, lhs, rhs)
    }

    fn holds(&self, cfg: &RefineConfig) -> Result<bool> {
        Ok(check_refinement(&self.gamma, &self.assertion, &self.lhs, &self.rhs, cfg)?.holds)
    }
}

impl fmt::Display for Judgement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.gamma.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({} |> {} <= {})", e.assertion, e.var, e.bound)?;
        }
        write!(f, " |- {} |> {} <= {}", self.assertion, self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleReport {
    pub rule: Rule,
    pub samples: usize,
    /// Samples whose premises all held, so the conclusion was checked.
    pub premises_held: usize,
    /// Instantiations with all premises holding and the conclusion failing.
    pub violations: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct RuleCheckConfig {
    pub refine: RefineConfig,
    pub seed: u64,
    /// AST depth of sampled processes.
    pub process_depth: usize,
}

impl RuleCheckConfig {
    pub fn new(universe: Universe, depth: usize, seed: u64) -> Self {
        RuleCheckConfig { refine: RefineConfig::new(universe, depth), seed, process_depth: 2 }
    }
}

struct Sampler {
    gen: Generator,
}

impl Sampler {
    fn new(cfg: &RuleCheckConfig, vars: &[&str]) -> Result<Self> {
        let g = GenConfig::new(cfg.refine.sem.universe.clone(), cfg.seed)
            .with_depth(cfg.process_depth)
            .with_free_vars(vars);
        Ok(Sampler { gen: Generator::new(g)? })
    }

    fn rng(&mut self) -> &mut ChaCha8Rng {
        self.gen.rng()
    }

    fn process(&mut self) -> Process {
        self.gen.process()
    }

    /// A process that often, but not always, sits above `p`.
    fn above(&mut self, p: &Process) -> Process {
        match self.rng().gen_range(0..4) {
            0 => p.clone(),
            1 => Process::ichoice(p.clone(), self.process()),
            2 => Process::ichoice(self.process(), p.clone()),
            _ => self.process(),
        }
    }

    fn atom(&mut self, vars: &[&str]) -> Assertion {
        let x = ChanExpr::Var(Var::new(*vars.choose(self.rng()).expect("variables")));
        let y = ChanExpr::Var(Var::new(*vars.choose(self.rng()).expect("variables")));
        match self.rng().gen_range(0..7) {
            0 => Assertion::True,
            1 => Assertion::Pub(x),
            2 => Assertion::Pri(x),
            3 => Assertion::or(Assertion::Pub(x.clone()), Assertion::Pri(x)),
            4 => Assertion::Eq(x, y),
            5 => Assertion::Neq(x, y),
            _ => Assertion::False,
        }
    }

    fn assertion(&mut self, vars: &[&str]) -> Assertion {
        if vars.is_empty() {
            return Assertion::True;
        }
        match self.rng().gen_range(0..5) {
            0 | 1 => self.atom(vars),
            2 => Assertion::and(self.atom(vars), self.atom(vars)),
            3 => Assertion::star(self.atom(vars), self.atom(vars)),
            _ => Assertion::or(self.atom(vars), self.atom(vars)),
        }
    }

    fn prefix_on(&mut self, x: &str) -> Prefix {
        let chan = ChanExpr::Var(Var::new(x));
        if self.rng().gen_bool(0.5) {
            Prefix::Send { chan, payload: ChanExpr::Var(Var::new("y")) }
        } else {
            Prefix::Recv { chan, binder: Var::new("w") }
        }
    }
}

fn send(x: &str, y: &str, cont: Process) -> Process {
    Process::send(ChanExpr::Var(Var::new(x)), ChanExpr::Var(Var::new(y)), cont)
}

fn recv(x: &str, y: &str, cont: Process) -> Process {
    Process::recv(ChanExpr::Var(Var::new(x)), Var::new(y), cont)
}

fn a(src: &str) -> Assertion {
    super::parse_assertion(src).expect("built-in assertion")
}

/// An instance of a rule: premises, conclusion, and any side condition on
/// assertions that must be decided first.
struct Instance {
    side: Option<(Assertion, Assertion)>,
    premises: Vec<Judgement>,
    conclusion: Judgement,
}

fn instantiate(rule: Rule, s: &mut Sampler) -> Instance {
    let plain = |premises, conclusion| Instance { side: None, premises, conclusion };
    match rule {
        Rule::SendPub => {
            let p = s.assertion(&["x", "y", "z"]);
            let lhs = s.process();
            let rhs = s.above(&lhs);
            let pre = Judgement::plain(Assertion::star(p.clone(), a("x@pub /\\ y@pub")), lhs.clone(), rhs.clone());
            let post = Judgement::plain(Assertion::star(p, a("x@pub /\\ y@known")), send("x", "y", lhs), send("x", "y", rhs));
            plain(vec![pre], post)
        }
        Rule::SendPri => {
            let lhs = s.process();
            let rhs = s.process();
            plain(vec![], Judgement::plain(a("x@pri /\\ y@known"), send("x", "y", lhs), rhs))
        }
        Rule::RecvPub => {
            let p = s.assertion(&["x", "z"]);
            let lhs = s.process();
            let rhs = s.above(&lhs);
            let px = Assertion::star(p, a("x@pub"));
            let pre = Judgement::plain(Assertion::and(px.clone(), a("y@pub")), lhs.clone(), rhs.clone());
            let post = Judgement::plain(px, recv("x", "y", lhs), recv("x", "y", rhs));
            plain(vec![pre], post)
        }
        Rule::RecvPri => {
            let lhs = s.process();
            let rhs = s.process();
            plain(vec![], Judgement::plain(a("x@pri"), recv("x", "y", lhs), rhs))
        }
        Rule::New => {
            let p = s.assertion(&["y", "z"]);
            let lhs = s.process();
            let rhs = s.above(&lhs);
            let pre = Judgement::plain(Assertion::star(p.clone(), a("x@pri")), lhs.clone(), rhs.clone());
            let x = Var::new("x");
            let post =
                Judgement::plain(p, Process::new_chan(x.clone(), lhs), Process::new_chan(x, rhs));
            plain(vec![pre], post)
        }
        Rule::Par => {
            let p = s.assertion(&["x", "y"]);
            let lifted = lift_assertion(&p);
            let (l1, l2) = (s.process(), s.process());
            let (r1, r2) = (s.above(&l1), s.above(&l2));
            let pre1 = Judgement::plain(lifted.clone(), l1.clone(), r1.clone());
            let pre2 = Judgement::plain(lifted, l2.clone(), r2.clone());
            let post = Judgement::plain(p, Process::par(l1, l2), Process::par(r1, r2));
            plain(vec![pre1, pre2], post)
        }
        Rule::Hypothesis => {
            let p = s.assertion(&["x", "y"]);
            let bound = s.process();
            let gamma = Context::empty().with(p.clone(), "X", bound.clone());
            plain(vec![], Judgement::new(gamma, p, Process::PVar(PVar::new("X")), bound))
        }
        Rule::RecInduction => {
            let p = s.assertion(&["x", "y"]);
            let x = PVar::new("X");
            let base = s.process();
            let subject = if s.rng().gen_bool(0.5) { "x" } else { "y" };
            let pre = s.prefix_on(subject);
            let step = Process::Sum(vec![(pre, Process::PVar(x.clone()))]);
            let body = if s.rng().gen_bool(0.5) { Process::ichoice(base, step) } else { step };
            let rhs = match s.rng().gen_range(0..3) {
                0 => Process::rec(x.clone(), body.clone()),
                1 => Process::rec(x.clone(), Process::ichoice(body.clone(), s.process())),
                _ => s.process(),
            };
            let gamma = Context::empty().with(p.clone(), "X", rhs.clone());
            let premise = Judgement::new(gamma, p.clone(), body.clone(), rhs.clone());
            plain(vec![premise], Judgement::plain(p, Process::rec(x, body), rhs))
        }
        Rule::Consequence => {
            let weak = s.assertion(&["x", "y"]);
            let strong = match s.rng().gen_range(0..3) {
                0 => Assertion::and(weak.clone(), s.atom(&["x", "y"])),
                1 => Assertion::star(weak.clone(), s.atom(&["x", "y"])),
                _ => s.assertion(&["x", "y"]),
            };
            let lhs = s.process();
            let rhs = s.above(&lhs);
            let pre = Judgement::plain(weak.clone(), lhs.clone(), rhs.clone());
            Instance { side: Some((strong.clone(), weak)), premises: vec![pre], conclusion: Judgement::plain(strong, lhs, rhs) }
        }
    }
}

/// Samples `samples` instances of `rule` and checks that whenever every
/// premise holds, so does the conclusion.
pub fn check_rule_soundness(rule: Rule, samples: usize, cfg: &RuleCheckConfig) -> Result<RuleReport> {
    let mut sampler = Sampler::new(cfg, &["x", "y"])?;
    let mut report = RuleReport { rule, samples, premises_held: 0, violations: Vec::new() };
    'sample: for _ in 0..samples {
        let inst = instantiate(rule, &mut sampler);
        if let Some((p, q)) = &inst.side {
            if !entails(p, q, &cfg.refine.sem.universe)? {
                continue;
            }
        }
        for j in &inst.premises {
            if !j.holds(&cfg.refine)? {
                continue 'sample;
            }
        }
        report.premises_held += 1;
        if !inst.conclusion.holds(&cfg.refine)? {
            let premises: Vec<String> = inst.premises.iter().map(|j| j.to_string()).collect();
            report.violations.push(format!("premises [{}] conclusion {}", premises.join("; "), inst.conclusion));
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleReport {
    /// `(ρ, σ, frame)` combinations satisfying the precondition.
    pub checked: usize,
    pub violations: Vec<String>,
}

/// Frame assertions over `x`, `y`, `z`: every atom, and the separating
/// and conjunctive combinations of ownership atoms.
pub fn frame_assertions() -> Vec<Assertion> {
    let vars = ["x", "y", "z"];
    let mut own = Vec::new();
    for v in vars {
        own.push(Assertion::is_pub(v));
        own.push(Assertion::is_pri(v));
        own.push(Assertion::known(v));
    }
    let mut out = vec![Assertion::True, Assertion::False];
    out.extend(own.iter().cloned());
    for v in vars {
        for w in vars {
            if v < w {
                let (ev, ew) = (ChanExpr::Var(Var::new(v)), ChanExpr::Var(Var::new(w)));
                out.push(Assertion::Eq(ev.clone(), ew.clone()));
                out.push(Assertion::Neq(ev, ew));
            }
        }
    }
    for p in &own {
        for q in &own {
            out.push(Assertion::star(p.clone(), q.clone()));
            out.push(Assertion::and(p.clone(), q.clone()));
        }
    }
    out
}

/// `{r ∗ (x pub ∧ y known)} x̄y {r ∗ (x pub ∧ y pub)}` over every channel
/// assignment, resource and frame `r` from [`frame_assertions`].
pub fn check_send_triple(universe: &Universe) -> Result<TripleReport> {
    let pre_core = a("x@pub /\\ y@known");
    let post_core = a("x@pub /\\ y@pub");
    let vars = ["x", "y", "z"].into_iter().map(Var::new).collect();
    let resources = universe.all_resources();
    let frames = frame_assertions();
    let mut report = TripleReport { checked: 0, violations: Vec::new() };
    for asg in assignments(&vars, universe) {
        let mut env = Env::empty();
        for (x, c) in &asg {
            env.chans.insert(x.clone(), c.clone());
        }
        let (cx, cy) = (env.chans[&Var::new("x")].clone(), env.chans[&Var::new("y")].clone());
        for r in &frames {
            let pre = Assertion::star(r.clone(), pre_core.clone());
            let post = Assertion::star(r.clone(), post_core.clone());
            for sigma in &resources {
                if !eval_assertion(&env, sigma, &pre)? {
                    continue;
                }
                report.checked += 1;
                let ok = match apply_action(&Action::Send(cx.clone(), cy.clone()), sigma) {
                    Verdict::Ok(after) => eval_assertion(&env, &after, &post)?,
                    _ => false,
                };
                if !ok {
                    report.violations.push(format!("frame {r} at {sigma} with x={cx}, y={cy}"));
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub samples: usize,
    pub violations: Vec<String>,
}

/// `x pri ∧ y known ▷ x̄y.P | x(z).Q ≡ P | Q{y/z}`, checked in both
/// directions on sampled `P` and `Q`.
pub fn check_expansion_law(samples: usize, cfg: &RuleCheckConfig) -> Result<LawReport> {
    let mut ps = Sampler::new(cfg, &["x", "y"])?;
    let mut qs = Sampler::new(&RuleCheckConfig { seed: cfg.seed.wrapping_add(1), ..cfg.clone() }, &["x", "y", "z"])?;
    let pre = a("x@pri /\\ y@known");
    let mut report = LawReport { samples, violations: Vec::new() };
    for _ in 0..samples {
        let (p, q) = (ps.process(), qs.process());
        let lhs = Process::par(send("x", "y", p.clone()), recv("x", "z", q.clone()));
        let rhs = Process::par(p, subst_chan_expr(&q, &Var::new("z"), &ChanExpr::Var(Var::new("y"))));
        for (l, r) in [(&lhs, &rhs), (&rhs, &lhs)] {
            let v = check_refinement(&Context::empty(), &pre, l, r, &cfg.refine)?;
            if !v.holds {
                report.violations.push(format!("{l}  vs  {r}: {:?}", v.counterexample));
            }
        }
    }
    Ok(report)
}
