//! The `cornering-trace v1` text format and a JSON dump.
//!
//! ```text
//! cornering-trace v1
//! start <digest> <term>
//! <n> beta <rule> @ <path> <digest> -> <digest>
//! <n> struct <law> <fwd|bwd> @ <path> <digest> -> <digest>
//! <n> base <rule> @ <path> <digest> -> <digest>
//! end <digest> <term>
//! ```
//!
//! Digests identify subterms by the SHA-256 of their printed form. Reading
//! a trace recomputes each step and checks it against the digests.

use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::base::{enumerate_base_rewrites, BaseRule};
use crate::engine::{beta_redex, BetaRule, Step, StepKind, Trace};
use crate::term::{apply_law, backward_all, parse_path, path_to_string, Law, Node, Orientation, Term};

use super::{print_term, Workspace};

pub const TRACE_HEADER: &str = "cornering-trace v1";

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TraceError {
    #[error("line {0}: {1}")]
    Syntax(usize, String),
    #[error("line {0}: {1}")]
    Replay(usize, String),
}

/// The first 16 hex digits of the SHA-256 of the printed term.
pub fn term_digest(t: &Term) -> String {
    let h = Sha256::digest(print_term(t).as_bytes());
    h.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

pub fn write_trace(tr: &Trace) -> String {
    let mut out = format!("{TRACE_HEADER}\nstart {} {}\n", term_digest(&tr.start), print_term(&tr.start));
    for (i, s) in tr.steps.iter().enumerate() {
        out.push_str(&format!(
            "{} {} @ {} {} -> {}\n",
            i + 1,
            s.kind.label(),
            path_to_string(&s.path),
            term_digest(&s.before),
            term_digest(&s.after)
        ));
    }
    out.push_str(&format!("end {} {}\n", term_digest(&tr.end), print_term(&tr.end)));
    out
}

pub fn trace_json(tr: &Trace) -> Value {
    let steps: Vec<Value> = tr
        .steps
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let (kind, name, orientation) = match &s.kind {
                StepKind::Beta(r) => ("beta", r.name().to_string(), None),
                StepKind::Struct(l, o) => ("struct", l.name().to_string(), Some(o.name())),
                StepKind::BaseRw(n) => ("base", n.to_string(), None),
            };
            json!({
                "index": i + 1,
                "kind": kind,
                "name": name,
                "orientation": orientation,
                "path": path_to_string(&s.path),
                "before": print_term(&s.before),
                "after": print_term(&s.after),
                "before_digest": term_digest(&s.before),
                "after_digest": term_digest(&s.after),
                "special_after": s.after.special(),
            })
        })
        .collect();
    json!({
        "format": TRACE_HEADER,
        "start": print_term(&tr.start),
        "steps": steps,
        "end": print_term(&tr.end),
    })
}

/// Read a trace, resolving each step against the current term.
pub fn read_trace(text: &str, ws: &Workspace) -> Result<Trace, TraceError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, l)) if l == TRACE_HEADER => {}
        Some((n, l)) => return Err(TraceError::Syntax(n, format!("expected `{TRACE_HEADER}`, found `{l}`"))),
        None => return Err(TraceError::Syntax(1, "empty trace".into())),
    }
    let (n, start_line) = lines.next().ok_or_else(|| TraceError::Syntax(2, "missing start line".into()))?;
    let (digest, term) = digest_and_term(n, start_line, "start")?;
    let start = ws.parse_term(term).map_err(|d| TraceError::Syntax(n, d[0].to_string()))?;
    if term_digest(&start) != digest {
        return Err(TraceError::Replay(n, "start digest does not match".into()));
    }
    let rules = &ws.signature.rules;
    let mut cur = start.clone();
    let mut steps = Vec::new();
    for (n, line) in lines {
        if line.starts_with("end ") {
            let (digest, _) = digest_and_term(n, line, "end")?;
            if term_digest(&cur) != digest {
                return Err(TraceError::Replay(n, "end digest does not match".into()));
            }
            return Ok(Trace { start, steps, end: cur });
        }
        let step = read_step(n, line, &cur, rules)?;
        cur = cur.replace(&step.path, step.after.clone()).map_err(|e| TraceError::Replay(n, e.to_string()))?;
        steps.push(step);
    }
    Err(TraceError::Syntax(0, "missing end line".into()))
}

fn digest_and_term<'a>(n: usize, line: &'a str, tag: &str) -> Result<(&'a str, &'a str), TraceError> {
    let rest = line.strip_prefix(tag).map(str::trim_start).ok_or_else(|| TraceError::Syntax(n, format!("expected `{tag}`")))?;
    rest.split_once(' ').ok_or_else(|| TraceError::Syntax(n, "expected a digest and a term".into()))
}

fn read_step(n: usize, line: &str, cur: &Term, rules: &[BaseRule]) -> Result<Step, TraceError> {
    let syntax = |m: &str| TraceError::Syntax(n, m.to_string());
    let (head, tail) = line.split_once(" @ ").ok_or_else(|| syntax("expected `@`"))?;
    let words: Vec<&str> = head.split_whitespace().collect();
    let tail: Vec<&str> = tail.split_whitespace().collect();
    let [path, before_d, "->", after_d] = tail.as_slice() else { return Err(syntax("expected `<path> <digest> -> <digest>`")) };
    let path = parse_path(path).ok_or_else(|| syntax("bad path"))?;
    let before = cur.at(&path).cloned().ok_or_else(|| TraceError::Replay(n, "no subterm at path".into()))?;
    if term_digest(&before) != *before_d {
        return Err(TraceError::Replay(n, "subterm digest does not match".into()));
    }
    let (kind, candidates): (StepKind, Vec<Term>) = match words.as_slice() {
        [_, "beta", r] => {
            let rule = BetaRule::parse(r).ok_or_else(|| syntax("unknown beta rule"))?;
            let c = beta_redex(&before).filter(|(k, _)| *k == rule).map(|(_, t)| t);
            (StepKind::Beta(rule), c.into_iter().collect())
        }
        [_, "struct", l, o] => {
            let law = Law::parse(l).ok_or_else(|| syntax("unknown law"))?;
            match *o {
                "fwd" => (StepKind::Struct(law, Orientation::Forward), apply_law(law, Orientation::Forward, &before).into_iter().collect()),
                "bwd" => (StepKind::Struct(law, Orientation::Backward), backward_all(law, &before)),
                _ => return Err(syntax("expected `fwd` or `bwd`")),
            }
        }
        [_, "base", r] => {
            let c = match before.node() {
                Node::Base(f) => {
                    enumerate_base_rewrites(f, rules).into_iter().filter(|w| &*w.rule == *r).map(|w| Term::base(w.result)).collect()
                }
                _ => Vec::new(),
            };
            (StepKind::BaseRw((*r).into()), c)
        }
        _ => return Err(syntax("unknown step kind")),
    };
    let after = candidates
        .into_iter()
        .find(|t| term_digest(t) == *after_d)
        .ok_or_else(|| TraceError::Replay(n, format!("no {} result matches", kind.label())))?;
    Ok(Step { kind, path, before, after })
}
