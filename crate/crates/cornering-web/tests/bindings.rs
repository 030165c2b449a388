use cornering_web::{eq_source, pop_source, reduce_source};

fn corn(name: &str) -> String {
    std::fs::read_to_string(format!("{}/../../corn/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn reduce_and_pop_vending() {
    let src = corn("vending.corn");
    let out = reduce_source(&src, "C1_M", false).unwrap();
    assert!(out.starts_with("[c] : "), "{out}");
    assert!(out.contains("cornering-trace v1"));
    assert!(pop_source(&src, "C2").unwrap().contains("\nshape: "));
    assert!(reduce_source(&src, "nope", false).unwrap_err().contains("unknown term"));
}

#[test]
fn bakery_needs_rules() {
    let src = corn("bakery.corn");
    assert!(reduce_source(&src, "E_B", true).unwrap().starts_with("[1@I] : "));
    assert!(eq_source(&src, "E_B", "idI", true).unwrap());
    assert!(!eq_source(&src, "E_B", "idI", false).unwrap());
}

#[test]
fn parse_errors_are_reported() {
    assert!(reduce_source("object A;\nmor f : B -> A;\n", "x", false).is_err());
}
