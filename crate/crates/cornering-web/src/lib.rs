//! Browser bindings: reduce, pop and compare terms of a `.corn` workspace.

use wasm_bindgen::prelude::*;

use cornering::coherence::decide_vertical_eq;
use cornering::dsl::{parse_workspace, write_trace, Workspace};
use cornering::engine::{pop, reduce_combined, Strategy};
use cornering::term::Term;

fn load(source: &str) -> Result<Workspace, String> {
    parse_workspace(source).map_err(|ds| ds.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("\n"))
}

fn named<'a>(ws: &'a Workspace, name: &str) -> Result<&'a Term, String> {
    ws.term(name).ok_or_else(|| format!("unknown term `{name}`"))
}

/// Reduce `name` with the popped-form strategy, using the workspace rules
/// when `rules` is set. Returns the result, its type and the trace.
pub fn reduce_source(source: &str, name: &str, rules: bool) -> Result<String, String> {
    let ws = load(source)?;
    let rs = if rules { &ws.signature.rules[..] } else { &[] };
    let (end, tr) = reduce_combined(named(&ws, name)?, rs, Strategy::PopFirst, 100_000).map_err(|e| e.to_string())?;
    Ok(format!("{end} : {}\n\n{}", end.ty(), write_trace(&tr)))
}

/// Bring `name` into popped form. Returns the form, its shape and the trace.
pub fn pop_source(source: &str, name: &str) -> Result<String, String> {
    let ws = load(source)?;
    let (end, form, tr) = pop(named(&ws, name)?).map_err(|e| e.to_string())?;
    Ok(format!("{end}\nshape: {}\n\n{}", form.kind().name(), write_trace(&tr)))
}

/// Decide equality of two vertical terms, with or without the workspace rules.
pub fn eq_source(source: &str, a: &str, b: &str, rules: bool) -> Result<bool, String> {
    let ws = load(source)?;
    let rs = if rules { &ws.signature.rules[..] } else { &[] };
    decide_vertical_eq(named(&ws, a)?, named(&ws, b)?, rs).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn reduce(source: &str, name: &str, rules: bool) -> Result<String, JsError> {
    reduce_source(source, name, rules).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = popTerm)]
pub fn pop_term(source: &str, name: &str) -> Result<String, JsError> {
    pop_source(source, name).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = decideEq)]
pub fn decide_eq(source: &str, a: &str, b: &str, rules: bool) -> Result<bool, JsError> {
    eq_source(source, a, b, rules).map_err(|e| JsError::new(&e))
}
