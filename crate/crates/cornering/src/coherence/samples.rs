//! Signatures used by the property harness.

use crate::base::{mor_comp, mor_id, mor_tensor, BaseRule, ObjectWord, Signature};

/// Objects `A`, `B`; `f : A → B`, `m : A⊗B → A`, `u : I → A`, `e : B → I`.
pub fn four_generator() -> Signature {
    let mut s = Signature::default();
    s.add_object("A");
    s.add_object("B");
    let (a, b) = (s.word(&["A"]), s.word(&["B"]));
    s.add_gen("f", a.clone(), b.clone());
    s.add_gen("m", a.concat(&b), a.clone());
    s.add_gen("u", ObjectWord::unit(), a);
    s.add_gen("e", b, ObjectWord::unit());
    s
}

/// Objects `A`, `B`; `f : A → B`, `g : B → A`.
pub fn two_generator() -> Signature {
    let mut s = Signature::default();
    s.add_object("A");
    s.add_object("B");
    let (a, b) = (s.word(&["A"]), s.word(&["B"]));
    s.add_gen("f", a.clone(), b.clone());
    s.add_gen("g", b, a);
    s
}

/// The bakery: ingredients are mixed and baked into bread, which is eaten.
pub fn bakery() -> Signature {
    let mut s = Signature::default();
    s.add_object("Ingr");
    s.add_object("Food");
    let (i, f, unit) = (s.word(&["Ingr"]), s.word(&["Food"]), ObjectWord::unit());
    s.add_gen("water", unit.clone(), i.clone());
    s.add_gen("flour", unit.clone(), i.clone());
    s.add_gen("bread", unit.clone(), f.clone());
    s.add_gen("mix", i.concat(&i), i.clone());
    s.add_gen("bake", i, f.clone());
    s.add_gen("eat", f, unit.clone());
    let lhs =
        mor_comp(&mor_comp(&mor_tensor(&s.mor("water"), &s.mor("flour")), &s.mor("mix")).expect("mix"), &s.mor("bake")).expect("bake");
    let make = BaseRule::new("make-bread", lhs, s.mor("bread")).expect("rule");
    let eat = BaseRule::new("eat-bread", mor_comp(&s.mor("bread"), &s.mor("eat")).expect("eat"), mor_id(&unit)).expect("rule");
    s.rules = vec![make, eat];
    s
}
