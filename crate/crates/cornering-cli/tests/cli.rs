use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use cornering::dsl::{parse_workspace, read_trace};
use cornering::engine::StepKind;

fn corn(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corn").join(name)
}

fn run(file: &PathBuf, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cornering")).arg("-f").arg(file).args(args).env_remove("CORNERING_SEED").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_corn(name: &str, text: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("cornering-cli-{}-{name}.corn", std::process::id()));
    std::fs::write(&p, text).unwrap();
    p
}

/// The trace printed after the result lines, read back against the file.
fn printed_trace(file: &PathBuf, out: &str) -> cornering::engine::Trace {
    let ws = parse_workspace(&std::fs::read_to_string(file).unwrap()).unwrap();
    let start = out.find("cornering-trace v1").expect("trace header");
    let tr = read_trace(&out[start..], &ws).unwrap();
    assert_eq!(tr.replay(&ws.signature.rules).unwrap(), tr.end);
    tr
}

#[test]
fn reduce_vending_with_trace() {
    let f = corn("vending.corn");
    let o = run(&f, &["reduce", "C1_M", "--trace"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("[c]\nbase: c\n"), "{out}");
    let tr = printed_trace(&f, &out);
    assert_eq!(tr.count(|k| matches!(k, StepKind::Beta(_))), 3);
    assert!(tr.count(|k| matches!(k, StepKind::Struct(..))) > 0);
    for (t, g) in [("C2_M", "[g]"), ("C3_M", "[g']")] {
        let o = run(&f, &["reduce", t]);
        assert_eq!(stdout(&o).lines().next(), Some(g));
    }
}

#[test]
fn reduce_bakery_with_rules() {
    let f = corn("bakery.corn");
    let o = run(&f, &["reduce", "E_B", "--rules", "on", "--trace"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("[1@I]\n"), "{out}");
    let tr = printed_trace(&f, &out);
    for r in ["make-bread", "eat-bread"] {
        assert_eq!(tr.count(|k| matches!(k, StepKind::BaseRw(n) if &**n == r)), 1, "{r}");
    }
    let off = run(&f, &["reduce", "E_B"]);
    assert_ne!(stdout(&off).lines().next(), Some("[1@I]"));
    let id = run(&f, &["reduce", "idI"]);
    assert_eq!(stdout(&id).lines().next(), Some("[1@I]"));
}

#[test]
fn other_strategies_and_json() {
    let f = corn("bakery.corn");
    for s in ["interleaved", "exhaustive", "random"] {
        let o = run(&f, &["reduce", "E_B", "--rules", "on", "--strategy", s]);
        assert_eq!(stdout(&o).lines().next(), Some("[1@I]"), "{s}");
    }
    let o = run(&f, &["reduce", "E_B", "--trace-json"]);
    let out = stdout(&o);
    let json: serde_json::Value = serde_json::from_str(&out[out.find('{').unwrap()..]).unwrap();
    assert_eq!(json["format"], "cornering-trace v1");
    assert!(json["steps"].as_array().is_some_and(|s| !s.is_empty()));
}

#[test]
fn budget_and_usage_exit_codes() {
    let f = corn("vending.corn");
    assert_eq!(run(&f, &["reduce", "C1_M", "--max-steps", "5"]).status.code(), Some(3));
    assert_eq!(run(&f, &["reduce", "nope"]).status.code(), Some(2));
    assert_eq!(run(&f, &["eq", "C1_M", "C2_M"]).status.code(), Some(2));
    assert_eq!(run(&f, &["eq", "M", "M"]).status.code(), Some(2));
    let bad = temp_corn("bad", "object Gum;\nmor g : $1 -> Gum;\n");
    let o = run(&bad, &["check"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains(":2:9: error:"), "{err}");
}

#[test]
fn eq_and_check() {
    let f = corn("vending.corn");
    let o = run(&f, &["eq", "C1_M", "cCell"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "true\n".to_string()));
    let two = temp_corn("two", "object A;\nmor f : A -> A;\nmor g : A -> A;\nterm F = [f];\nterm G = [g];\n");
    let o = run(&two, &["eq", "F", "G"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(1), "false\n".to_string()));
    let c = run(&f, &["check"]);
    assert_eq!(c.status.code(), Some(0));
    assert!(stdout(&c).contains("C1_M : <1 | $2 -> Cig | 1>"));
}

#[test]
fn split_and_pop() {
    let f = corn("bakery.corn");
    let o = run(&f, &["split", "E", "1", "--trace"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[0].ends_with(": <1 | I -> I | Ingr!>"), "{out}");
    assert!(lines[1].ends_with(": <1 | I -> I | Food?>"), "{out}");
    printed_trace(&f, &out);
    let p = run(&corn("vending.corn"), &["pop", "C2"]);
    assert_eq!(p.status.code(), Some(0));
    assert!(stdout(&p).contains("shape: "));
}

#[test]
fn harness_reports() {
    let o = Command::new(env!("CARGO_BIN_EXE_cornering"))
        .args(["harness", "confluence", "--count", "25"])
        .env("CORNERING_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "confluence: 25/25 joinable\n");
    let j = Command::new(env!("CARGO_BIN_EXE_cornering")).args(["harness", "flat", "--count", "5", "--json"]).output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(v["run"], 5);
    assert_eq!(v["failures"], 0);
}

fn step(file: &PathBuf, name: &str, input: &str) -> String {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cornering"))
        .arg("-f")
        .arg(file)
        .args(["step", name])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    stdout(&o)
}

#[test]
fn stepping_always_first_reaches_normal_form() {
    let f = corn("vending.corn");
    let out = step(&f, "C2_M", &"0\n".repeat(1000));
    let tail: Vec<&str> = out.lines().rev().take(3).collect();
    assert_eq!(tail, vec!["normal form", "#: 0", "term: [g]"]);
}

#[test]
fn stepping_reprompts_and_dumps_trace() {
    let f = corn("vending.corn");
    let out = step(&f, "C2_M", "x\n99999\n0\ntrace\nquit\n");
    assert_eq!(out.matches("invalid choice").count(), 2);
    assert!(out.contains("cornering-trace v1\nstart "));
    let struct_line = out.lines().map(|l| l.trim_start_matches("step> ")).find(|l| l.starts_with("struct ")).unwrap();
    let (a, b) = struct_line.rsplit_once(" (").unwrap().1.trim_end_matches(')').split_once(" -> ").unwrap();
    assert_eq!(a, b, "{struct_line}");
    let leaf = temp_corn("leaf", "object A;\nmor f : A -> A;\nterm F = [f];\n");
    assert!(step(&leaf, "F", "").ends_with("normal form\n"));
}
