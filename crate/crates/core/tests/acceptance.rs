//! Acceptance suite. Prints one PASS/FAIL line per criterion, with detail
//! lines for every failed check, and exits nonzero if any criterion fails.

mod common;

use std::collections::{BTreeSet, VecDeque};
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use pirho::config::SemConfig;
use pirho::generator::{
    congruence_check, safe_corpus, universe_adequate, CongruenceVerdict, GenConfig, Generator, Mode,
};
use pirho::liveness_sem::{ldenote_at, lobserve, set_refines, trace_refines, LTrace, LTraceSet};
use pirho::logic::{check_expansion_law, check_rule_soundness, check_send_triple, Rule, RuleCheckConfig};
use pirho::opsem::{blocked_set, res_steps};
use pirho::resources::{
    apply_action, check_invariant_rel, check_separation, dual, Action, DirSet, Ownership, Resource, Universe, Verdict,
};
use pirho::safety_sem::{
    denote, denote_at, interleave_traces, observe_behavior, observe_traces, prefix_behavior, Env, ProcBinding, Trace,
    TraceSet,
};
use pirho::syntax::{parse, print, safety_check, subst_chan, subst_proc, Chan, PVar, Process, Var};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Outcome of one criterion: failed checks and a short summary.
#[derive(Default)]
struct Check {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Check {
    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn error(&mut self, what: &str, e: impl std::fmt::Display) {
        self.failures.push(format!("{what}: error: {e}"));
    }
}

fn run(id: usize, name: &str, f: impl FnOnce(&mut Check)) -> bool {
    let start = Instant::now();
    let mut c = Check::default();
    f(&mut c);
    let ok = c.failures.is_empty();
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("{verdict} {id}. {name} [{}] ({:.1}s)", c.notes.join("; "), start.elapsed().as_secs_f64());
    for f in &c.failures {
        println!("    - {f}");
    }
    ok
}

fn c(name: &str) -> Chan {
    Chan::new(name)
}

fn res(pairs: &[(&str, Ownership)]) -> Resource {
    Resource::from_pairs(pairs.iter().copied())
}

fn show(ts: &TraceSet) -> String {
    let v: Vec<String> = ts.iter().map(|t| format!("{t:?}")).collect();
    format!("{{{}}}", v.join(", "))
}

fn show_l(ts: &LTraceSet) -> String {
    let v: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

fn u3() -> Universe {
    u(&["c1", "c2", "c3"])
}

fn corpus(count: usize, seed: u64) -> Vec<(Process, Resource)> {
    safe_corpus(&GenConfig::new(u3(), seed), count).expect("corpus")
}

fn criterion1(ck: &mut Check) {
    let start = Instant::now();
    let cfg = SemConfig::new(u3(), 4);
    let mut equal = 0;
    for (p, sigma) in corpus(500, 1) {
        match congruence_check(&p, &sigma, &cfg, Mode::Safety) {
            Ok(r) if r.verdict == CongruenceVerdict::Equal => equal += 1,
            Ok(r) => ck.expect(false, format!("{p} at {sigma}: {:?}, only op {:?}, only den {:?}", r.verdict, r.only_op, r.only_den)),
            Err(e) => ck.error(&format!("{p} at {sigma}"), e),
        }
    }
    ck.note(format!("{equal}/500 equal"));
    ck.expect(start.elapsed() < Duration::from_secs(300), "runtime above 5 minutes");
}

fn criterion2(ck: &mut Check) {
    let uni = u(&["c", "d"]);
    let cfg = SemConfig::new(uni.clone(), 2);
    let pubc = res(&[("c", Ownership::Pub)]);

    let p = parse("new x. x!x.0").unwrap();
    let mut expected = TraceSet::unit();
    for ch in uni.chans() {
        expected.insert(Trace(vec![Action::Alloc(ch.clone())]));
    }
    match denote_at(&p, &Env::empty(), &Resource::empty(), &cfg) {
        Ok(got) => ck.expect(
            got == expected,
            format!("[[new x. x!x.0]] at {{}}: expected {}, got {}", show(&expected), show(&got)),
        ),
        Err(e) => ck.error("[[new x. x!x.0]]", e),
    }

    let q = parse("new x. (x!#c.0 | x?(y).0)").unwrap();
    match denote_at(&q, &Env::empty(), &pubc, &cfg) {
        Ok(got) => ck.expect(got == TraceSet::unit(), format!("[[new x.(x!c | x?(y))]] at [c pub]: got {}", show(&got))),
        Err(e) => ck.error("[[new x.(x!c | x?(y))]]", e),
    }

    let sigma = res(&[("c", Ownership::Pub), ("d", Ownership::Pri)]);
    let t = Trace(vec![Action::Send(c("d"), c("c"))]);
    let r = Trace(vec![Action::Recv(c("d"), c("c"))]);
    let got = interleave_traces(&t, &r, &uni, 2).at(&sigma);
    ck.expect(got == TraceSet::unit(), format!("(d!c || d?c) at [c pub, d pri]: got {}", show(&got)));

    let empty = Env::empty();
    match (denote(&parse("new x. 0").unwrap(), &empty, &cfg), denote(&Process::nil(), &empty, &cfg)) {
        (Ok(a), Ok(b)) => ck.expect(a == b, "[[new x. 0]] differs from [[0]]"),
        (Err(e), _) | (_, Err(e)) => ck.error("[[new x. 0]]", e),
    }

    let steps = res_steps(&parse("#c!#c.0").unwrap(), &res(&[("c", Ownership::Pri)]), &uni).unwrap();
    ck.expect(steps.is_empty(), format!("res_steps(c!c.0, [c pri]) = {steps:?}"));
    // The same example through the command line.
    let dir = std::env::temp_dir().join(format!("pirho-acceptance-2-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("ex.pi");
    std::fs::write(&file, "new x. x!x.0\n").unwrap();
    let (code, stdout) =
        cli(&["dtrace", file.to_str().unwrap(), "--sigma", "{}", "--universe", "#c,#d", "--depth", "2"]);
    let stdout = String::from_utf8_lossy(&stdout).into_owned();
    ck.expect(code == Some(0) && stdout == "\nnu #c\nnu #d\n", format!("pirho dtrace printed {stdout:?}"));
    ck.note("5 worked examples and the dtrace rendering");
}

fn all_actions(uni: &Universe) -> Vec<Action> {
    let mut out = vec![Action::Tau, Action::Fault];
    for a in uni.chans() {
        out.push(Action::Alloc(a.clone()));
        for b in uni.chans() {
            out.push(Action::Send(a.clone(), b.clone()));
            out.push(Action::Recv(a.clone(), b.clone()));
        }
    }
    out.extend(all_dir_sets(uni).into_iter().map(Action::Block));
    out
}

fn criterion3(ck: &mut Check) {
    // Locality and communication, exhaustive at |U| = 2. Separations are
    // brute-forced here rather than taken from enumerate_separations.
    let uni = u(&["c", "d"]);
    let resources = uni.all_resources();
    let actions = all_actions(&uni);
    let mut triples = 0;
    for s in &resources {
        for s1 in &resources {
            for s2 in &resources {
                if !check_separation(s, s1, s2) {
                    continue;
                }
                triples += 1;
                for a in &actions {
                    match (apply_action(a, s), apply_action(a, s1)) {
                        (Verdict::Impermissible, v1) => {
                            ck.expect(v1 == Verdict::Impermissible, format!("locality: {a} faults at {s} but not at {s1}"))
                        }
                        (Verdict::Ok(s_after), Verdict::Ok(s1_after)) => ck.expect(
                            check_separation(&s_after, &s1_after, s2),
                            format!("locality: {a} at {s} = {s1} * {s2} breaks separation"),
                        ),
                        (Verdict::Ok(_), Verdict::Impermissible) => {}
                        (Verdict::Ok(_), Verdict::Impossible) => {
                            ck.expect(false, format!("locality: {a} ok at {s} but impossible at {s1}"))
                        }
                        (Verdict::Impossible, _) => {}
                    }
                    if let Some(d) = dual(a) {
                        if let (Verdict::Ok(s1_after), Verdict::Ok(s2_after)) = (apply_action(a, s1), apply_action(&d, s2)) {
                            ck.expect(
                                check_separation(s, &s1_after, &s2_after),
                                format!("communication: {a} at {s1} with {d} at {s2} leaves {s} unseparated"),
                            );
                        }
                    }
                }
            }
        }
    }
    ck.note(format!("{triples} separations x {} actions", actions.len()));

    // nu-swap on behaviors of corpus processes.
    let cfg3 = SemConfig::new(u3(), 3);
    for (p, _) in corpus(20, 3) {
        let b = observe_behavior(&p, &cfg3).unwrap();
        for x in u3().chans() {
            for y in u3().chans() {
                if x == y {
                    continue;
                }
                let xy = prefix_behavior(&Action::Alloc(x.clone()), &prefix_behavior(&Action::Alloc(y.clone()), &b));
                let yx = prefix_behavior(&Action::Alloc(y.clone()), &prefix_behavior(&Action::Alloc(x.clone()), &b));
                ck.expect(xy == yx, format!("nu-swap fails for {x}, {y} on {p}"));
            }
        }
    }

    // new-swap on open processes over x, y.
    let cfg2 = SemConfig::new(uni.clone(), 3);
    let mut g = Generator::new(GenConfig::new(uni.clone(), 5).with_depth(3).with_free_vars(&["x", "y"])).unwrap();
    let (x, y) = (Var::new("x"), Var::new("y"));
    for _ in 0..100 {
        let p = g.process();
        let a = Process::new_chan(x.clone(), Process::new_chan(y.clone(), p.clone()));
        let b = Process::new_chan(y.clone(), Process::new_chan(x.clone(), p.clone()));
        match (denote(&a, &Env::empty(), &cfg2), denote(&b, &Env::empty(), &cfg2)) {
            (Ok(da), Ok(db)) => ck.expect(da == db, format!("new-swap fails on {p}")),
            (Err(e), _) | (_, Err(e)) => ck.error(&format!("new-swap on {p}"), e),
        }
    }

    // Unwinding: rec_0 = rec X.X, rec_{n+1} = P{rec_n/X}.
    let k = 3;
    let cfg = SemConfig::new(u3(), k);
    let mut g = Generator::new(GenConfig::new(u3(), 9).with_depth(3)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let xv = PVar::new("X");
    let mut unwound = 0;
    while unwound < 50 {
        let q = g.process();
        let body = guarded_body(&mut rng, &q, &xv, &u3());
        let whole = Process::rec(xv.clone(), body.clone());
        let consts = pirho::syntax::analyze(&whole).constants;
        let sigma = g.resource_containing(&consts);
        if !safety_check(&sigma, &whole).unwrap() {
            continue;
        }
        unwound += 1;
        let target = observe_traces(&whole, &sigma, &cfg).unwrap();
        let mut approx = parse("rec X. X").unwrap();
        let mut union = TraceSet::unit();
        let mut stable_at = None;
        for n in 0..=k + 2 {
            let step = observe_traces(&approx, &sigma, &cfg).unwrap();
            let next = union.union(&step);
            if next == union && n > 0 && stable_at.is_none() {
                stable_at = Some(n);
            }
            union = next;
            approx = subst_proc(&body, &xv, &approx);
        }
        ck.expect(union == target, format!("unwinding does not reach O[[{whole}]] at {sigma}"));
        ck.expect(stable_at.is_some_and(|n| n <= k + 2), format!("unwinding of {whole} not stable"));
    }

    // Substitution lemma for channels and process variables.
    let mut g = Generator::new(GenConfig::new(uni.clone(), 13).with_depth(3).with_free_vars(&["x"])).unwrap();
    let mut closed = Generator::new(GenConfig::new(uni.clone(), 14).with_depth(2)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let p = g.process();
        for ch in uni.chans() {
            let lhs = denote(&subst_chan(&p, &x, ch), &Env::empty(), &cfg2);
            let rhs = denote(&p, &Env::empty().with_chan("x", ch.as_str()), &cfg2);
            match (lhs, rhs) {
                (Ok(l), Ok(r)) => ck.expect(l == r, format!("[[P{{{ch}/x}}]] != [[P]][x:={ch}] for {p}")),
                (Err(e), _) | (_, Err(e)) => ck.error(&format!("channel substitution on {p}"), e),
            }
        }
        let body = open_body(&mut rng, &subst_chan(&p, &x, &uni.chans()[0]), &xv);
        let q = closed.process();
        let lhs = denote(&subst_proc(&body, &xv, &q), &Env::empty(), &cfg2);
        let qb = denote(&q, &Env::empty(), &cfg2).unwrap();
        let rhs = denote(&body, &Env::empty().with_proc("X", ProcBinding::Behavior(qb.into())), &cfg2);
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => ck.expect(l == r, format!("[[P{{Q/X}}]] != [[P]][X:=[[Q]]] for P = {body}, Q = {q}")),
            (Err(e), _) | (_, Err(e)) => ck.error(&format!("process substitution on {body}"), e),
        }
    }
    ck.note("nu-swap, new-swap x100, unwinding x50, substitution x100");
}

fn criterion4(ck: &mut Check) {
    let k = 4;
    let uni = u3();
    let mut states = 0usize;
    for (p, sigma) in corpus(500, 1) {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([(p.clone(), sigma.clone(), 0usize)]);
        seen.insert((p, sigma));
        while let Some((q, s, depth)) = queue.pop_front() {
            states += 1;
            if depth == k {
                continue;
            }
            for step in res_steps(&q, &s, &uni).unwrap() {
                ck.expect(step.action != Action::Fault, format!("{q} at {s} faults"));
                let safe = safety_check(&step.next_resource, &step.successor).unwrap();
                ck.expect(safe, format!("{q} at {s} --{}--> unsafe {}", step.action, step.successor));
                let key = (step.successor, step.next_resource);
                if seen.insert(key.clone()) {
                    queue.push_back((key.0, key.1, depth + 1));
                }
            }
        }
    }
    ck.note(format!("{states} reachable configurations"));
}

fn blocked(dirs: &[pirho::resources::Dir]) -> LTrace {
    let mut s = DirSet::empty();
    for d in dirs {
        s.insert(d.clone());
    }
    LTrace::blocked(Trace::empty(), s)
}

fn criterion5(ck: &mut Check) {
    let uni = u(&["c", "d"]);
    let cfg = SemConfig::new(uni.clone(), 3);
    let both = |p: &Process, s: &Resource| -> (LTraceSet, LTraceSet) {
        (lobserve(p, s, &cfg).unwrap(), ldenote_at(p, &Env::empty(), s, &cfg).unwrap())
    };
    let selfsend = parse("#c!#c.0").unwrap();
    let cases = [
        (&selfsend, res(&[("c", Ownership::Pub)]), LTraceSet::from_traces([blocked(&[pirho::resources::Dir::send(&c("c"))])])),
        (&selfsend, res(&[("c", Ownership::Pri)]), LTraceSet::from_traces([blocked(&[])])),
    ];
    for (p, s, expected) in &cases {
        let (op, den) = both(p, s);
        ck.expect(op == den, format!("{p} at {s}: lobserve {} vs ldenote {}", show_l(&op), show_l(&den)));
        ck.expect(op == *expected, format!("{p} at {s}: expected {}, got {}", show_l(expected), show_l(&op)));
    }
    let nil = Process::nil();
    for s in uni.all_resources() {
        let (op, den) = both(&nil, &s);
        let expected = LTraceSet::from_traces([blocked(&[])]);
        ck.expect(op == expected && den == expected, format!("0 at {s}: {} / {}", show_l(&op), show_l(&den)));
    }
    let div = parse("rec X. X").unwrap();
    let (op, den) = both(&div, &Resource::empty());
    ck.expect(op == LTraceSet::catastrophic(), format!("rec X.X lobserve: {}", show_l(&op)));
    ck.expect(den == LTraceSet::catastrophic(), format!("rec X.X ldenote: {}", show_l(&den)));

    let cfg = SemConfig::new(u3(), 3);
    let (mut equal, mut unknown) = (0, 0);
    for (p, sigma) in corpus(200, 2) {
        match congruence_check(&p, &sigma, &cfg, Mode::Liveness) {
            Ok(r) => match r.verdict {
                CongruenceVerdict::Equal => equal += 1,
                CongruenceVerdict::Skipped(_) => unknown += 1,
                CongruenceVerdict::Different => {
                    ck.expect(false, format!("liveness {p} at {sigma}: only op {:?}, only den {:?}", r.only_op, r.only_den))
                }
            },
            Err(e) => ck.error(&format!("liveness {p} at {sigma}"), e),
        }
    }
    ck.note(format!("corpus {equal}/200 equal, {unknown} undecided"));
}

/// `δΔ ∈ T` at the empty prefix. A fault at ε stands for every trace.
fn has_block(t: &LTraceSet, d: &DirSet) -> bool {
    t.contains(&LTrace::blocked(Trace::empty(), d.clone())) || t.contains(&LTrace::faulted(Trace::empty()))
}

fn criterion6(ck: &mut Check) {
    let uni = u(&["c", "d"]);
    let cfg = SemConfig::new(uni.clone(), 2);
    let procs = pirho::generator::enumerate_processes(&uni, 1);
    let resources = uni.all_resources();
    let dir_sets = all_dir_sets(&uni);
    // Instances are restricted to safe components, as in the congruence
    // proof the lemma serves, and to universes that cannot run out of
    // fresh names.
    let mut quads = Vec::new();
    for op in &resources {
        for s1 in &resources {
            for s2 in &resources {
                for den in &resources {
                    if check_invariant_rel(op, den, s1, s2) {
                        quads.push((op.clone(), den.clone(), s1.clone(), s2.clone()));
                    }
                }
            }
        }
    }
    let single: Vec<Vec<LTraceSet>> =
        procs.iter().map(|p| resources.iter().map(|s| lobserve(p, s, &cfg).unwrap()).collect()).collect();
    let idx = |s: &Resource| resources.iter().position(|r| r == s).expect("resource in universe");
    let (mut bullet1, mut bullet2) = (0usize, 0usize);
    for (i, p1) in procs.iter().enumerate() {
        for (j, p2) in procs.iter().enumerate() {
            let par = Process::par(p1.clone(), p2.clone());
            let mut composite = vec![None; resources.len()];
            for (op, den, s1, s2) in &quads {
                if !safety_check(s1, p1).unwrap()
                    || !safety_check(s2, p2).unwrap()
                    || !universe_adequate(&par, op, &uni)
                {
                    continue;
                }
                let (t1, t2) = (&single[i][idx(s1)], &single[j][idx(s2)]);
                let comp: &LTraceSet =
                    composite[idx(op)].get_or_insert_with(|| lobserve(&par, op, &cfg).unwrap());
                let d1s: Vec<&DirSet> = dir_sets.iter().filter(|d| has_block(t1, d)).collect();
                let d2s: Vec<&DirSet> = dir_sets.iter().filter(|d| has_block(t2, d)).collect();
                for d1 in &d1s {
                    for d2 in &d2s {
                        if !d1.compatible(d2) {
                            continue;
                        }
                        bullet1 += 1;
                        let merged = d1.union(d2).project(den);
                        ck.expect(
                            has_block(comp, &merged),
                            format!("{par}: delta{merged} missing at {op} (I with {den}, {s1}, {s2})"),
                        );
                    }
                }
                // Second bullet: the composite is blocked at op itself.
                if let Some(raw) = blocked_set(&par, op, &uni).unwrap() {
                    let d = &raw.project(op);
                    bullet2 += 1;
                    let found = d1s.iter().any(|d1| {
                        d2s.iter().any(|d2| d1.compatible(d2) && d1.union(d2).project(den) == *d)
                    });
                    ck.expect(found, format!("{par}: delta{d} at {op} has no component witnesses at {s1}, {s2}"));
                }
            }
        }
    }
    ck.note(format!(
        "{} processes, {} quadruples, {bullet1} + {bullet2} instances",
        procs.len(),
        quads.len()
    ));
}

fn criterion7(ck: &mut Check) {
    let uni = u(&["c", "d"]);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut chains = 0;
    for _ in 0..1000 {
        let t = random_ltrace(&mut rng, &uni, 3);
        let m = weaken(&mut rng, &t, &uni);
        let v = weaken(&mut rng, &m, &uni);
        ck.expect(trace_refines(&t, &t), format!("{t} does not refine itself"));
        if trace_refines(&t, &m) && trace_refines(&m, &v) {
            chains += 1;
            ck.expect(trace_refines(&t, &v), format!("transitivity: {t} <= {m} <= {v}"));
        }
    }
    let cat = LTraceSet::catastrophic();
    for _ in 0..100 {
        let n = rand::Rng::gen_range(&mut rng, 0..5);
        let set = LTraceSet::from_traces((0..n).map(|_| random_ltrace(&mut rng, &uni, 3)));
        ck.expect(set_refines(&set, &cat).unwrap(), format!("{} does not refine FAULT", show_l(&set)));
    }
    ck.note(format!("{chains}/1000 non-vacuous chains"));
}

fn criterion8(ck: &mut Check) {
    let cfg = RuleCheckConfig::new(u(&["c", "d"]), 3, 8);
    let law = check_expansion_law(50, &cfg).unwrap();
    for v in &law.violations {
        ck.expect(false, format!("expansion law: {v}"));
    }
    let mut held = Vec::new();
    for r in Rule::ALL {
        let rep = check_rule_soundness(r, 100, &cfg).unwrap();
        held.push(format!("{r} {}", rep.premises_held));
        for v in &rep.violations {
            ck.expect(false, format!("{r}: {v}"));
        }
    }
    let triple = check_send_triple(&u3()).unwrap();
    for v in &triple.violations {
        ck.expect(false, format!("send triple: {v}"));
    }
    ck.note(format!("premises held: {}; triple cases {}", held.join(", "), triple.checked));
}

fn cli(args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_pirho")).args(args).env_remove("PIRHO_UNIVERSE").output().expect("run pirho");
    (out.status.code(), out.stdout)
}

fn criterion9(ck: &mut Check) {
    let mut failures = 0;
    for (i, cfg) in [GenConfig::new(u3(), 21), GenConfig::new(u3(), 22).with_free_vars(&["x", "y"])].into_iter().enumerate() {
        let mut g = Generator::new(cfg).unwrap();
        for _ in 0..500 {
            let p = g.process();
            let text = print(&p);
            match parse(&text) {
                Ok(q) if q == p => {}
                other => {
                    failures += 1;
                    ck.expect(false, format!("round trip {i}: {text} -> {other:?}"));
                }
            }
        }
    }
    ck.expect(failures == 0, format!("{failures} round-trip failures"));

    let dir = std::env::temp_dir().join(format!("pirho-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("ex.pi");
    std::fs::write(&file, "new x. #c!x.0 | #c?(y).y!y.0\n").unwrap();
    let f = file.to_str().unwrap();
    let runs: [&[&str]; 4] = [
        &["fuzz", "--count", "60", "--seed", "3", "--universe", "#c1,#c2,#c3"],
        &["fuzz", "--count", "30", "--seed", "3", "--mode", "liveness", "--universe", "#c1,#c2,#c3"],
        &["dtrace", f, "--sigma", "{#c: pub}", "--universe", "#c,#d", "--depth", "3"],
        &["rules", "--samples", "10", "--seed", "5"],
    ];
    for args in runs {
        let (a, b) = (cli(args), cli(args));
        ck.expect(a.0 == Some(0), format!("pirho {} exited with {:?}", args.join(" "), a.0));
        ck.expect(!a.1.is_empty() && a == b, format!("pirho {} is not byte-deterministic", args.join(" ")));
    }
    ck.note("1000 round trips, 4 CLI runs twice");
}

fn main() {
    println!("acceptance suite");
    let results = [
        run(1, "safety congruence on 500 generated instances", criterion1),
        run(2, "worked examples", criterion2),
        run(3, "locality, communication, nu-swap, new-swap, unwinding, substitution", criterion3),
        run(4, "safe configurations never fault and stay safe", criterion4),
        run(5, "liveness examples and liveness congruence", criterion5),
        run(6, "blocking congruence", criterion6),
        run(7, "refinement order", criterion7),
        run(8, "logic: expansion law, rule soundness, send triple", criterion8),
        run(9, "parser round trip and CLI determinism", criterion9),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
