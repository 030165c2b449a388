use std::fs;
use std::path::PathBuf;

use cornering::dsl::{parse_workspace, print_term, DiagKind, Span};

fn corn(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corn").join(name);
    fs::read_to_string(p).unwrap()
}

#[test]
fn shipped_files_print_back_exactly() {
    for f in ["vending.corn", "bakery.corn"] {
        let text = corn(f);
        let ws = parse_workspace(&text).unwrap_or_else(|d| panic!("{f}: {d:?}"));
        assert_eq!(ws.print(), text, "{f}");
        for n in ws.term_names() {
            let t = ws.term(&n).unwrap();
            assert_eq!(ws.parse_term(&print_term(t)).unwrap(), *t);
        }
    }
}

#[test]
fn vending_types() {
    let ws = parse_workspace(&corn("vending.corn")).unwrap();
    let m = ws.term("M").unwrap();
    assert_eq!(m.ty().left, *ws.protocol("V").unwrap());
    assert!(m.ty().right.is_unit() && m.ty().top.is_unit() && m.ty().bottom.is_unit());
    for n in ["C1_M", "C2_M", "C3_M"] {
        assert!(ws.term(n).unwrap().ty().is_vertical(), "{n}");
    }
}

#[test]
fn empty_and_errors() {
    let ws = parse_workspace("").unwrap();
    assert!(ws.decls.is_empty());
    let d = parse_workspace("object Gum;\nmor g : $1 -> Gum;").unwrap_err();
    assert_eq!(d.len(), 1);
    assert_eq!(d[0].kind, DiagKind::UnknownObject);
    assert_eq!(d[0].span, Span { line: 2, col: 9 });
    let d = parse_workspace("object A;\nterm t = A^> . A^>;\nterm u = 1@A (+) 1@A (+) 1@A;").unwrap_err();
    assert_eq!(d.len(), 2);
    assert_eq!(d[0].kind, DiagKind::Type);
    assert_eq!(d[0].span, Span { line: 2, col: 14 });
    assert!(d[0].expected.is_some() && d[0].found.is_some());
    assert_eq!(d[1].kind, DiagKind::Syntax);
}

#[test]
fn traces_round_trip() {
    use cornering::dsl::{read_trace, trace_json, write_trace};
    use cornering::engine::{reduce_combined, Strategy};
    for (f, names) in [("vending.corn", vec!["C1_M", "C2_M", "C3_M", "M", "C3"]), ("bakery.corn", vec!["E_B", "E", "B", "idI"])] {
        let ws = parse_workspace(&corn(f)).unwrap();
        for n in names {
            let t = ws.term(n).unwrap();
            let (_, tr) = reduce_combined(t, &ws.signature.rules, Strategy::PopFirst, 10_000).unwrap();
            let text = write_trace(&tr);
            let back = read_trace(&text, &ws).unwrap_or_else(|e| panic!("{n}: {e}\n{text}"));
            assert_eq!(back.steps, tr.steps);
            assert_eq!(back.replay(&ws.signature.rules).unwrap(), tr.end);
            assert_eq!(trace_json(&tr)["steps"].as_array().unwrap().len(), tr.steps.len());
        }
    }
}
