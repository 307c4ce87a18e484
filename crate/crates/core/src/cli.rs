//! The `pirho` command line. [`run`] does all the work and returns the exit
//! status with the text for stdout and stderr, so it can be tested without
//! spawning a process.

use std::collections::BTreeSet;
use std::fmt::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{parse_config, RunConfig};
use crate::error::{Error, Result};
use crate::generator::{congruence_check, safe_corpus, CongruenceVerdict, GenConfig, Mode};
use crate::liveness_sem::{ldenote_at, lobserve, LTraceSet};
use crate::logic::{check_refinement, check_rule_soundness, parse_assertion, Context, RefineConfig, Rule, RuleCheckConfig};
use crate::opsem::res_steps;
use crate::resources::{parse_resource, parse_universe, Resource};
use crate::safety_sem::{denote_at, observe_traces, Env, TraceSet};
use crate::syntax::{check_constants, parse, Process};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DIFFERENT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable holding the default universe.
pub const UNIVERSE_ENV: &str = "PIRHO_UNIVERSE";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "pirho", version, about = "Semantics workbench for a resource-aware pi-calculus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
struct Common {
    /// Channel universe, e.g. `#c,#d`
    #[arg(long)]
    universe: Option<String>,
    /// Maximum number of observable actions per trace
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    silent_budget: Option<usize>,
    #[arg(long)]
    state_budget: Option<usize>,
    /// `key = value` file with defaults for the flags above
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct Single {
    file: PathBuf,
    /// Initial resource, e.g. `{#c: pub}`
    #[arg(long, default_value = "{}")]
    sigma: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Safety,
    Liveness,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Safety => Mode::Safety,
            ModeArg::Liveness => Mode::Liveness,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a process file and print its canonical form
    Parse {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// List the resource-checked steps of a process
    Steps(Single),
    /// Operational safety traces
    Otrace {
        #[command(flatten)]
        single: Single,
        /// Print the symmetric difference with the denotational traces
        #[arg(long)]
        diff: bool,
    },
    /// Denotational safety traces
    Dtrace {
        #[command(flatten)]
        single: Single,
        /// Print the symmetric difference with the operational traces
        #[arg(long)]
        diff: bool,
    },
    /// Liveness traces, operational unless `--den` is given
    Ltrace {
        #[command(flatten)]
        single: Single,
        #[arg(long)]
        den: bool,
        #[arg(long)]
        diff: bool,
    },
    /// Compare the operational and denotational semantics
    Compare {
        #[command(flatten)]
        single: Single,
        #[arg(long, value_enum, default_value = "safety")]
        mode: ModeArg,
    },
    /// Check `p |> P <= Q` over every channel assignment and resource
    Refine {
        #[arg(long = "assert")]
        assertion: String,
        lhs: PathBuf,
        rhs: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Sampled soundness check of the proof rules
    Rules {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Only this rule
        #[arg(long)]
        rule: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Congruence check on generated instances
    Fuzz {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// AST depth of generated processes
        #[arg(long, default_value_t = 4)]
        size: usize,
        #[arg(long, value_enum, default_value = "safety")]
        mode: ModeArg,
        #[arg(long)]
        fail_fast: bool,
        #[command(flatten)]
        common: Common,
    },
}

/// Runs the command line `argv` (including the program name), reading the
/// default universe from `PIRHO_UNIVERSE`.
pub fn run<S: AsRef<str>>(argv: &[S]) -> Outcome {
    run_with_env(argv, std::env::var(UNIVERSE_ENV).ok().as_deref())
}

/// Like [`run`] with the default universe passed explicitly.
pub fn run_with_env<S: AsRef<str>>(argv: &[S], env_universe: Option<&str>) -> Outcome {
    let cli = match Cli::try_parse_from(argv.iter().map(|s| s.as_ref())) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut out = String::new();
    match execute(cli.command, env_universe, &mut out) {
        Ok(code) => Outcome { code, stdout: out, stderr: String::new() },
        Err(e) => Outcome { code: EXIT_USAGE, stdout: out, stderr: format!("error: {e}\n") },
    }
}

fn run_config(common: &Common, env_universe: Option<&str>) -> Result<RunConfig> {
    let mut rc = RunConfig::default();
    if let Some(u) = env_universe.filter(|u| !u.trim().is_empty()) {
        rc.universe = parse_universe(u).map_err(|e| Error::Config(format!("{UNIVERSE_ENV}: {e}")))?;
    }
    if let Some(path) = &common.config {
        rc.apply(&parse_config(&read(path)?)?);
    }
    if let Some(u) = &common.universe {
        rc.universe = parse_universe(u)?;
    }
    if let Some(k) = common.depth {
        rc.depth = k;
    }
    if let Some(b) = common.silent_budget {
        rc.silent_budget = b;
    }
    if let Some(b) = common.state_budget {
        rc.state_budget = b;
    }
    Ok(rc)
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))
}

fn load_process(path: &PathBuf, rc: &RunConfig) -> Result<Process> {
    let p = parse(&read(path)?)?;
    check_constants(&p, &rc.universe)?;
    Ok(p)
}

fn load_resource(text: &str, rc: &RunConfig) -> Result<Resource> {
    let sigma = parse_resource(text)?;
    if !rc.universe.contains_resource(&sigma) {
        return Err(Error::Config(format!("resource {sigma} mentions channels outside the universe")));
    }
    Ok(sigma)
}

fn load_single(s: &Single, env_universe: Option<&str>) -> Result<(RunConfig, Process, Resource)> {
    let rc = run_config(&s.common, env_universe)?;
    let p = load_process(&s.file, &rc)?;
    let sigma = load_resource(&s.sigma, &rc)?;
    Ok((rc, p, sigma))
}

fn render_safety(ts: &TraceSet) -> BTreeSet<String> {
    ts.iter().map(|t| t.to_string()).collect()
}

fn render_liveness(ts: &LTraceSet) -> BTreeSet<String> {
    let mut out: BTreeSet<String> = ts.iter().map(|t| t.to_string()).collect();
    for u in ts.unknown() {
        out.insert(if u.is_empty() { "?".to_string() } else { format!("{u} . ?") });
    }
    out
}

fn print_lines<'a>(out: &mut String, lines: impl IntoIterator<Item = &'a String>) {
    for l in lines {
        out.push_str(l);
        out.push('\n');
    }
}

/// Prints `op: t` and `den: t` lines for traces found by one side only.
fn print_diff(out: &mut String, op: &BTreeSet<String>, den: &BTreeSet<String>) -> i32 {
    let mut lines: Vec<String> = op.difference(den).map(|t| format!("op: {t}")).collect();
    lines.extend(den.difference(op).map(|t| format!("den: {t}")));
    lines.sort();
    print_lines(out, &lines);
    if lines.is_empty() {
        EXIT_OK
    } else {
        EXIT_DIFFERENT
    }
}

fn safety_pair(single: &Single, env_universe: Option<&str>) -> Result<(BTreeSet<String>, BTreeSet<String>)> {
    let (rc, p, sigma) = load_single(single, env_universe)?;
    let cfg = rc.sem();
    let op = render_safety(&observe_traces(&p, &sigma, &cfg)?);
    let den = render_safety(&denote_at(&p, &Env::empty(), &sigma, &cfg)?);
    Ok((op, den))
}

fn execute(command: Command, env_universe: Option<&str>, out: &mut String) -> Result<i32> {
    match command {
        Command::Parse { file, common } => {
            let rc = run_config(&common, env_universe)?;
            let p = load_process(&file, &rc)?;
            writeln!(out, "{p}").expect("write to string");
            Ok(EXIT_OK)
        }
        Command::Steps(single) => {
            let (rc, p, sigma) = load_single(&single, env_universe)?;
            let lines: BTreeSet<String> = res_steps(&p, &sigma, &rc.universe)?
                .into_iter()
                .map(|s| format!("--{}--> {} ; {}", s.action, s.successor, s.next_resource))
                .collect();
            print_lines(out, &lines);
            Ok(EXIT_OK)
        }
        Command::Otrace { single, diff } => {
            if diff {
                let (op, den) = safety_pair(&single, env_universe)?;
                return Ok(print_diff(out, &op, &den));
            }
            let (rc, p, sigma) = load_single(&single, env_universe)?;
            print_lines(out, &render_safety(&observe_traces(&p, &sigma, &rc.sem())?));
            Ok(EXIT_OK)
        }
        Command::Dtrace { single, diff } => {
            if diff {
                let (op, den) = safety_pair(&single, env_universe)?;
                return Ok(print_diff(out, &op, &den));
            }
            let (rc, p, sigma) = load_single(&single, env_universe)?;
            print_lines(out, &render_safety(&denote_at(&p, &Env::empty(), &sigma, &rc.sem())?));
            Ok(EXIT_OK)
        }
        Command::Ltrace { single, den, diff } => {
            let (rc, p, sigma) = load_single(&single, env_universe)?;
            let cfg = rc.sem();
            if diff {
                let op = render_liveness(&lobserve(&p, &sigma, &cfg)?);
                let dn = render_liveness(&ldenote_at(&p, &Env::empty(), &sigma, &cfg)?);
                return Ok(print_diff(out, &op, &dn));
            }
            let set = if den { ldenote_at(&p, &Env::empty(), &sigma, &cfg)? } else { lobserve(&p, &sigma, &cfg)? };
            print_lines(out, &render_liveness(&set));
            Ok(EXIT_OK)
        }
        Command::Compare { single, mode } => {
            let (rc, p, sigma) = load_single(&single, env_universe)?;
            let report = congruence_check(&p, &sigma, &rc.sem(), mode.into())?;
            match report.verdict {
                CongruenceVerdict::Equal => {
                    writeln!(out, "EQUAL ({} traces)", report.op_count).expect("write to string");
                    Ok(EXIT_OK)
                }
                CongruenceVerdict::Different => {
                    writeln!(out, "DIFFERENT ({} operational, {} denotational)", report.op_count, report.den_count)
                        .expect("write to string");
                    let op: BTreeSet<String> = report.only_op.into_iter().collect();
                    let den: BTreeSet<String> = report.only_den.into_iter().collect();
                    print_diff(out, &op, &den);
                    Ok(EXIT_DIFFERENT)
                }
                CongruenceVerdict::Skipped(why) => Err(Error::Incomparable(why)),
            }
        }
        Command::Refine { assertion, lhs, rhs, common } => {
            let rc = run_config(&common, env_universe)?;
            let a = parse_assertion(&assertion)?;
            let (p, q) = (load_process(&lhs, &rc)?, load_process(&rhs, &rc)?);
            let cfg = RefineConfig { sem: rc.sem(), ..RefineConfig::new(rc.universe.clone(), rc.depth) };
            let v = check_refinement(&Context::empty(), &a, &p, &q, &cfg)?;
            if v.holds {
                writeln!(out, "HOLDS").expect("write to string");
                return Ok(EXIT_OK);
            }
            writeln!(out, "FAILS").expect("write to string");
            if let Some(cx) = v.counterexample {
                let chans: Vec<String> = cx.chans.iter().map(|(x, c)| format!("{x}={c}")).collect();
                writeln!(out, "assignment: {}", chans.join(", ")).expect("write to string");
                writeln!(out, "resource: {}", cx.sigma).expect("write to string");
                writeln!(out, "trace: {}", cx.trace).expect("write to string");
            }
            Ok(EXIT_DIFFERENT)
        }
        Command::Rules { samples, seed, rule, common } => {
            let rc = run_config(&common, env_universe)?;
            let seed = seed.unwrap_or(rc.seed);
            let rules = match rule {
                Some(r) => vec![r.parse::<Rule>()?],
                None => Rule::ALL.to_vec(),
            };
            let mut cfg = RuleCheckConfig::new(rc.universe.clone(), rc.depth, seed);
            cfg.refine.sem = rc.sem();
            let mut code = EXIT_OK;
            for r in rules {
                let rep = check_rule_soundness(r, samples, &cfg)?;
                writeln!(
                    out,
                    "{}\tsamples={}\tpremises_held={}\tviolations={}",
                    r,
                    rep.samples,
                    rep.premises_held,
                    rep.violations.len()
                )
                .expect("write to string");
                for v in &rep.violations {
                    writeln!(out, "  {v}").expect("write to string");
                    code = EXIT_DIFFERENT;
                }
            }
            Ok(code)
        }
        Command::Fuzz { count, seed, size, mode, fail_fast, common } => {
            let rc = run_config(&common, env_universe)?;
            let seed = seed.unwrap_or(rc.seed);
            let gen = GenConfig::new(rc.universe.clone(), seed).with_depth(size);
            let cfg = rc.sem();
            let (mut equal, mut different, mut skipped) = (0usize, 0usize, 0usize);
            for (i, (p, sigma)) in safe_corpus(&gen, count)?.into_iter().enumerate() {
                let report = congruence_check(&p, &sigma, &cfg, mode.into())?;
                let verdict = match &report.verdict {
                    CongruenceVerdict::Equal => {
                        equal += 1;
                        "EQUAL"
                    }
                    CongruenceVerdict::Different => {
                        different += 1;
                        "DIFFERENT"
                    }
                    CongruenceVerdict::Skipped(_) => {
                        skipped += 1;
                        "SKIPPED"
                    }
                };
                writeln!(out, "{i}\t{p}\t{sigma}\t{verdict}\t{}", report.diff_size()).expect("write to string");
                if fail_fast && report.verdict == CongruenceVerdict::Different {
                    break;
                }
            }
            writeln!(out, "total\tequal={equal}\tdifferent={different}\tskipped={skipped}").expect("write to string");
            Ok(if different > 0 { EXIT_DIFFERENT } else { EXIT_OK })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn file(dir: &std::path::Path, name: &str, text: &str) -> String {
        let path = dir.join(name);
        std::fs::write(&path, text).unwrap();
        path.to_string_lossy().into_owned()
    }

    fn tmp(tag: &str) -> PathBuf {
        let d = std::env::temp_dir().join(format!("pirho-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&d).unwrap();
        d
    }

    fn go(args: &[&str]) -> Outcome {
        let mut v = vec!["pirho"];
        v.extend_from_slice(args);
        run_with_env(&v, None)
    }

    #[test]
    fn parse_prints_canonical_form() {
        let d = tmp("parse");
        let f = file(&d, "p.pi", "-- comment\n#c!#d . 0 |  #c?(y)\n");
        let o = go(&["parse", &f]);
        assert_eq!(o.code, 0, "{o:?}");
        assert_eq!(o.stdout, "#c!#d.0 | #c?(y).0\n");
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(go(&["frobnicate"]).code, EXIT_USAGE);
        assert_eq!(go(&["otrace"]).code, EXIT_USAGE);
        let d = tmp("usage");
        let bad = file(&d, "bad.pi", "#c!");
        let o = go(&["otrace", &bad]);
        assert_eq!(o.code, EXIT_USAGE);
        assert!(o.stderr.starts_with("error:"));
        let outside = file(&d, "out.pi", "#z!#z.0");
        assert_eq!(go(&["otrace", &outside]).code, EXIT_USAGE);
        assert_eq!(go(&["otrace", &outside, "--universe", "#z"]).code, EXIT_OK);
    }

    #[test]
    fn traces_print_epsilon_as_empty_line() {
        let d = tmp("traces");
        let f = file(&d, "p.pi", "#c!#c.0");
        let o = go(&["otrace", &f, "--sigma", "{#c: pub}", "--universe", "#c,#d", "--depth", "2"]);
        assert_eq!(o.stdout, "\n#c!#c\n");
        let o = go(&["dtrace", &f, "--sigma", "{#c: pub}", "--universe", "#c,#d", "--diff"]);
        assert_eq!((o.code, o.stdout.as_str()), (0, ""));
    }

    #[test]
    fn steps_and_ltrace() {
        let d = tmp("steps");
        let f = file(&d, "p.pi", "#c!#c.0");
        let o = go(&["steps", &f, "--sigma", "{#c: pub}", "--universe", "#c"]);
        assert_eq!(o.stdout, "--#c!#c--> 0 ; {#c: pub}\n");
        let o = go(&["ltrace", &f, "--sigma", "{#c: pri}", "--universe", "#c"]);
        assert_eq!(o.stdout, "delta{}\n");
        let o = go(&["ltrace", &f, "--sigma", "{#c: pri}", "--universe", "#c", "--den"]);
        assert_eq!(o.stdout, "delta{}\n");
    }

    #[test]
    fn compare_and_refine() {
        let d = tmp("cmp");
        let f = file(&d, "p.pi", "new x. x!x.0");
        let o = go(&["compare", &f, "--sigma", "{}"]);
        assert_eq!((o.code, o.stdout.as_str()), (0, "EQUAL (1 traces)\n"));
        let p = file(&d, "send.pi", "x!y.#c!#c.0");
        let q = file(&d, "q.pi", "0");
        let o = go(&["refine", "--assert", "x@pri /\\ y@known", &p, &q]);
        assert_eq!((o.code, o.stdout.as_str()), (0, "HOLDS\n"));
        let o = go(&["refine", "--assert", "x@pub /\\ y@known", &p, &q]);
        assert_eq!(o.code, EXIT_DIFFERENT);
        assert!(o.stdout.starts_with("FAILS\nassignment: "));
    }

    #[test]
    fn config_file_and_environment() {
        let d = tmp("config");
        let f = file(&d, "p.pi", "#e!#e.0");
        assert_eq!(go(&["otrace", &f, "--sigma", "{#e: pub}"]).code, EXIT_USAGE);
        let o = run_with_env(&["pirho", "otrace", &f, "--sigma", "{#e: pub}"], Some("#e"));
        assert_eq!(o.code, 0, "{o:?}");
        let conf = file(&d, "run.conf", "universe = #e\ndepth = 0\n");
        let o = go(&["otrace", &f, "--sigma", "{#e: pub}", "--config", &conf]);
        assert_eq!(o.stdout, "\n");
        let o = go(&["otrace", &f, "--sigma", "{#e: pub}", "--config", &conf, "--depth", "1"]);
        assert_eq!(o.stdout, "\n#e!#e\n");
    }

    #[test]
    fn fuzz_is_deterministic() {
        let args = ["fuzz", "--count", "15", "--seed", "4", "--universe", "#c1,#c2,#c3"];
        let a = go(&args);
        assert_eq!(a.code, 0, "{a:?}");
        assert_eq!(a, go(&args));
        assert_eq!(a.stdout.lines().count(), 16);
        assert!(a.stdout.ends_with("different=0\tskipped=0\n"));
    }

    #[test]
    fn rules_subcommand() {
        let o = go(&["rules", "--samples", "5", "--rule", "send-pri"]);
        assert_eq!(o.code, 0);
        assert_eq!(o.stdout, "send-pri\tsamples=5\tpremises_held=5\tviolations=0\n");
        assert_eq!(go(&["rules", "--rule", "bogus"]).code, EXIT_USAGE);
    }
}
