//! Printing in the surface syntax. The output parses back to the same value.

use crate::base::BaseMor;
use crate::protocol::ProtocolWord;
use crate::term::Term;

use super::ast::{print_objspec, print_proto_expr, print_proto_spec, print_term_expr, ProtoExpr, TermExpr};

/// A base morphism as tensor layers joined by `;`.
pub fn print_base(f: &BaseMor) -> String {
    if f.slices().is_empty() {
        return format!("1@{}", print_objspec(f.dom()));
    }
    let mut layers: Vec<String> = Vec::new();
    let slices = f.slices();
    let mut k = 0;
    while k < slices.len() {
        let cur = slices[k].dom();
        // Generators in this layer, as (offset in `cur`, slice index).
        let mut items: Vec<(usize, usize)> = vec![(slices[k].left.len(), k)];
        let mut shift = slices[k].gen.cod.len() as isize - slices[k].gen.dom.len() as isize;
        let mut end = slices[k].left.len() + slices[k].gen.dom.len();
        let mut j = k + 1;
        while j < slices.len() {
            let s = &slices[j];
            let at = s.left.len() as isize - shift;
            if at < end as isize
                || (at == end as isize && s.gen.dom.is_unit() && items.last().is_some_and(|(_, i)| slices[*i].gen.cod.is_unit()))
            {
                break;
            }
            let at = at as usize;
            if at + s.gen.dom.len() > cur.len() || cur.sub(at, at + s.gen.dom.len()) != s.gen.dom {
                break;
            }
            items.push((at, j));
            end = at + s.gen.dom.len();
            shift += s.gen.cod.len() as isize - s.gen.dom.len() as isize;
            j += 1;
        }
        let mut parts = Vec::new();
        let mut pos = 0;
        for (at, i) in &items {
            if *at > pos {
                parts.push(format!("1@{}", print_objspec(&cur.sub(pos, *at))));
            }
            parts.push(slices[*i].gen.name.to_string());
            pos = at + slices[*i].gen.dom.len();
        }
        if pos < cur.len() {
            parts.push(format!("1@{}", print_objspec(&cur.sub(pos, cur.len()))));
        }
        layers.push(parts.join(" * "));
        k = j;
    }
    layers.join(" ; ")
}

/// A protocol word; `1` for the unit.
pub fn print_protocol(u: &ProtocolWord) -> String {
    print_proto_expr(&ProtoExpr::of_word(u))
}

/// The argument of `id@`: `1`, a single send or receive, or a braced word.
pub fn print_protocol_spec(u: &ProtocolWord) -> String {
    print_proto_spec(&ProtoExpr::of_word(u))
}

pub fn print_term(t: &Term) -> String {
    print_term_expr(&TermExpr::of_term(t))
}
