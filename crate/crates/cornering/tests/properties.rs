use proptest::prelude::*;

use cornering::base::Signature;
use cornering::coherence::{decide_vertical_eq, samples, Target, TermGen};
use cornering::dsl::{parse_workspace, print_term, read_trace, write_trace, ProtoExpr, TermExpr, Workspace};
use cornering::engine::{available_steps, is_popped, pop};
use cornering::harness::{
    check_lex_measure, check_special_measure, confluence_of, flat_of, flat_term, harness_config, split_check, split_term, termination_term,
};
use cornering::term::Term;

fn workspace_of(sig: &Signature) -> Workspace {
    let mut ws = Workspace::default();
    for o in &sig.objects {
        ws.add_object(o);
    }
    for g in &sig.gens {
        ws.add_gen(&g.name, g.dom.clone(), g.cod.clone());
    }
    for r in &sig.rules {
        ws.add_rule(r.clone());
    }
    ws
}

fn any_term(sig: &Signature, seed: u64) -> Option<Term> {
    let mut g = TermGen::new(sig, harness_config(), seed);
    let (u, v) = (g.protocol(2), g.protocol(2));
    g.term(30, &Target::Boundary(u, v)).ok()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn pop_reaches_popped_form_and_lowers_special(seed in any::<u64>()) {
        let Some(t) = termination_term(seed) else { return Ok(()) };
        let (end, form, tr) = pop(&t).unwrap();
        prop_assert!(is_popped(&end).is_some());
        prop_assert_eq!(form.reassemble().unwrap(), end.clone());
        prop_assert_eq!(tr.replay(&[]).unwrap(), end);
        check_special_measure(&tr).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn printed_terms_parse_back(seed in any::<u64>()) {
        let sig = samples::four_generator();
        let Some(t) = any_term(&sig, seed) else { return Ok(()) };
        let ws = workspace_of(&sig);
        prop_assert_eq!(ws.parse_term(&print_term(&t)).unwrap(), t);
    }

    #[test]
    fn printed_workspaces_parse_back(seed in any::<u64>()) {
        let sig = samples::bakery();
        let mut ws = workspace_of(&sig);
        let mut g = TermGen::new(&sig, harness_config(), seed);
        let u = g.protocol(2);
        ws.add_protocol("U", u.clone(), ProtoExpr::of_word(&u));
        for i in 0..3 {
            if let Ok(t) = g.term(20, &Target::LeftClosed(u.clone())) {
                ws.add_term(&format!("t{i}"), t.clone(), TermExpr::of_term(&t));
            }
        }
        let text = ws.print();
        let back = parse_workspace(&text).unwrap();
        prop_assert_eq!(back.print(), text);
        prop_assert!(back == ws);
    }

    #[test]
    fn traces_read_back(seed in any::<u64>()) {
        let sig = samples::four_generator();
        let Some(t) = any_term(&sig, seed) else { return Ok(()) };
        let (_, _, tr) = pop(&t).unwrap();
        let back = read_trace(&write_trace(&tr), &workspace_of(&sig)).unwrap();
        prop_assert_eq!(back, tr);
    }

    #[test]
    fn strategies_agree_on_vertical_terms(seed in any::<u64>()) {
        let sig = samples::four_generator();
        let Ok(t) = TermGen::new(&sig, harness_config(), seed).term(30, &Target::Vertical) else { return Ok(()) };
        confluence_of(&t, seed).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn single_steps_preserve_the_decision(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let sig = samples::bakery();
        let Ok(t) = TermGen::new(&sig, harness_config(), seed).term(20, &Target::Vertical) else { return Ok(()) };
        let steps = available_steps(&t, &sig.rules);
        let s = &steps[pick.index(steps.len())];
        let next = t.replace(&s.path, s.after.clone()).unwrap();
        prop_assert!(decide_vertical_eq(&t, &next, &sig.rules).unwrap(), "{} broke equality", s.kind.label());
    }

    #[test]
    fn combined_reduction_lowers_the_measure(seed in any::<u64>()) {
        let sig = samples::bakery();
        let Ok(t) = TermGen::new(&sig, harness_config(), seed).term(30, &Target::Vertical) else { return Ok(()) };
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let (_, tr) = cornering::engine::reduce_interleaved_random(&t, &sig.rules, &mut rng, 100_000).unwrap();
        check_lex_measure(&tr).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn flat_terms_round_trip(seed in any::<u64>()) {
        let Some(a) = flat_term(seed) else { return Ok(()) };
        flat_of(&a).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn splits_recompose(seed in any::<u64>()) {
        let Some((a, k)) = split_term(seed) else { return Ok(()) };
        split_check(&a, k, seed).map_err(TestCaseError::fail)?;
    }
}
