//! One line per acceptance criterion. Runs without the libtest harness so
//! the lines print in order; exits nonzero if any criterion fails.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cornering::base::{base_eq, mor_id, BaseMor, ObjectWord};
use cornering::coherence::{oracle_agreement, samples, OracleConfig};
use cornering::dsl::{parse_workspace, print_base, Workspace};
use cornering::engine::{pop, reduce_combined, StepKind, Strategy};
use cornering::harness::{eta_in_context, eta_instance, run_suite, split_check, split_term, Suite, ETA_LAWS};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn workspace(file: &str) -> Workspace {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corn").join(file);
    let text = std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
    parse_workspace(&text).unwrap_or_else(|d| panic!("{}: {}", p.display(), d[0]))
}

fn within(limit: Duration, took: Duration) -> Result<(), String> {
    if took < limit {
        Ok(())
    } else {
        Err(format!("took {took:.2?}, limit {limit:?}"))
    }
}

fn vending() -> Outcome {
    let ws = workspace("vending.corn");
    let mut notes = Vec::new();
    for (name, gen) in [("C1_M", "c"), ("C2_M", "g"), ("C3_M", "g'")] {
        let t0 = Instant::now();
        let (end, _, tr) = pop(ws.term(name).unwrap()).map_err(|e| format!("{name}: {e}"))?;
        let took = t0.elapsed();
        within(Duration::from_secs(1), took).map_err(|e| format!("{name}: {e}"))?;
        let want = ws.signature.mor(gen);
        match end.as_base() {
            Some(f) if base_eq(f, &want) => notes.push(format!("{name} -> [{gen}] in {} steps, {took:.2?}", tr.steps.len())),
            _ => return Err(format!("{name} reduced to {end}, expected [{gen}]")),
        }
    }
    Ok(notes.join("; "))
}

fn bakery() -> Outcome {
    let ws = workspace("bakery.corn");
    let t0 = Instant::now();
    let (end, tr) =
        reduce_combined(ws.term("E_B").unwrap(), &ws.signature.rules, Strategy::PopFirst, 100_000).map_err(|e| e.to_string())?;
    let took = t0.elapsed();
    within(Duration::from_secs(1), took)?;
    let unit: BaseMor = mor_id(&ObjectWord::unit());
    if !end.as_base().is_some_and(|f| base_eq(f, &unit)) {
        return Err(format!("E_B reduced to {end}, expected [1@I]"));
    }
    let fired = |r: &str| tr.count(|k| matches!(k, StepKind::BaseRw(n) if &**n == r));
    let (make, eat) = (fired("make-bread"), fired("eat-bread"));
    if make == 0 || eat == 0 {
        return Err(format!("make-bread fired {make} times, eat-bread {eat} times"));
    }
    let rule = |r: &str| {
        let r = ws.signature.rules.iter().find(|x| &*x.name == r).unwrap();
        format!("{} => {}", print_base(&r.lhs), print_base(&r.rhs))
    };
    Ok(format!("E_B -> [1@I] in {} steps, {took:.2?}; fired `{}` and `{}`", tr.steps.len(), rule("make-bread"), rule("eat-bread")))
}

fn suite(s: Suite, count: usize, limit: Option<Duration>) -> Outcome {
    let t0 = Instant::now();
    let r = run_suite(s, 0, count);
    let took = t0.elapsed();
    if r.run != count {
        return Err(format!("only {} of {count} seeds produced a term", r.run));
    }
    if !r.passed() {
        return Err(r.to_string());
    }
    if let Some(l) = limit {
        within(l, took)?;
    }
    Ok(format!("{r} in {took:.2?}"))
}

fn combined() -> Outcome {
    let c = suite(Suite::Commutation, 300, None)?;
    let m = suite(Suite::Measure, 300, None)?;
    Ok(format!("{c}; {m}"))
}

fn coherence_oracle() -> Outcome {
    let t0 = Instant::now();
    let report = oracle_agreement(&samples::two_generator(), &OracleConfig::default());
    let took = t0.elapsed();
    if report.disagreements > 0 {
        return Err(report.to_string());
    }
    within(Duration::from_secs(600), took)?;
    Ok(format!("{report} in {took:.2?}"))
}

fn eta() -> Outcome {
    let mut notes = Vec::new();
    for (i, law) in ETA_LAWS.into_iter().enumerate() {
        let mut done = 0;
        let mut seed = i as u64 * 1_000_000;
        while done < 100 {
            if seed > i as u64 * 1_000_000 + 10_000 {
                return Err(format!("{}: only {done} instances generated", law.name()));
            }
            if let Some(inst) = eta_instance(law, seed) {
                eta_in_context(&inst, seed).map_err(|e| format!("seed {seed}: {e}"))?;
                done += 1;
            }
            seed += 1;
        }
        notes.push(format!("{} 100x10", law.name()));
    }
    Ok(notes.join(", "))
}

fn split() -> Outcome {
    let (mut done, mut seed) = (0, 0u64);
    while done < 300 {
        if seed > 10_000 {
            return Err(format!("only {done} terms generated"));
        }
        if let Some((a, k)) = split_term(seed) {
            split_check(&a, k, seed).map_err(|e| format!("seed {seed}: {e}"))?;
            done += 1;
        }
        seed += 1;
    }
    Ok(format!("{done}/300 split and closed equal"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("vending golden runs", vending),
        ("bakery golden run", bakery),
        ("termination", || suite(Suite::Termination, 1000, Some(Duration::from_secs(60)))),
        ("vertical confluence", || suite(Suite::Confluence, 500, None)),
        ("combined dynamics", combined),
        ("coherence oracle", coherence_oracle),
        ("flat round trip", || suite(Suite::Flat, 500, None)),
        ("eta in context", eta),
        ("split soundness", split),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = false;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let n = i + 1;
        if !filter.is_empty() && !filter.iter().any(|x| x == &n.to_string()) {
            continue;
        }
        match f() {
            Ok(note) => println!("criterion {n} {name}: PASS ({note})"),
            Err(why) => {
                failed = true;
                println!("criterion {n} {name}: FAIL ({why})");
            }
        }
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
