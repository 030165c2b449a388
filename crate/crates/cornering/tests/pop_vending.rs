use cornering::base::{BaseMor, ObjectWord, Signature};
use cornering::engine::{is_popped, pop, ShapeKind, StepKind};
use cornering::protocol::ProtocolWord;
use cornering::term::{Corner, Term};

struct Vending {
    sig: Signature,
    v: ProtocolWord,
    m: Term,
}

fn ob(sig: &Signature, s: &str) -> ObjectWord {
    sig.word(&[s])
}

fn chain(ts: Vec<Term>) -> Term {
    ts.into_iter().reduce(|a, b| Term::vcomp(a, b).unwrap()).unwrap()
}

fn vending() -> Vending {
    let mut sig = Signature::default();
    for o in ["Gum", "Cig", "$1", "$2"] {
        sig.add_object(o);
    }
    let (d1, d2, gum, cig) = (ob(&sig, "$1"), ob(&sig, "$2"), ob(&sig, "Gum"), ob(&sig, "Cig"));
    sig.add_gen("c", d2.clone(), cig.clone());
    sig.add_gen("g", d1.clone(), gum.clone());
    sig.add_gen("g'", d2.clone(), gum.concat(&d1));
    let s = |a: &ObjectWord| ProtocolWord::send(a.clone());
    let r = |a: &ObjectWord| ProtocolWord::recv(a.clone());
    let cig_p = s(&d2).concat(&r(&cig));
    let gum1 = s(&d1).concat(&r(&gum));
    let gum2 = s(&d2).concat(&r(&gum)).concat(&r(&d1));
    let v = ProtocolWord::plus(cig_p, ProtocolWord::plus(gum1, gum2));
    let m0 = chain(vec![Term::corner(Corner::UR, d2.clone()), Term::base(sig.mor("c")), Term::corner(Corner::LR, cig.clone())]);
    let m1 = chain(vec![Term::corner(Corner::UR, d1.clone()), Term::base(sig.mor("g")), Term::corner(Corner::LR, gum.clone())]);
    let m2 = chain(vec![
        Term::corner(Corner::UR, d2.clone()),
        Term::base(sig.mor("g'")),
        Term::hcomp(Term::corner(Corner::LR, gum.clone()), Term::vid(d1.clone())).unwrap(),
        Term::corner(Corner::LR, d1.clone()),
    ]);
    let m = Term::sum(m0, Term::sum(m1, m2).unwrap()).unwrap();
    Vending { sig, v, m }
}

fn split_plus(u: &ProtocolWord) -> (ProtocolWord, ProtocolWord) {
    match &u.0[0] {
        cornering::protocol::ProtocolAtom::Plus(a, b) => (a.clone(), b.clone()),
        _ => panic!(),
    }
}

fn customers(vm: &Vending) -> Vec<(Term, BaseMor)> {
    let sig = &vm.sig;
    let (d1, d2, gum, cig) = (ob(sig, "$1"), ob(sig, "$2"), ob(sig, "Gum"), ob(sig, "Cig"));
    let (cig_p, rest) = split_plus(&vm.v);
    let (gum1, gum2) = split_plus(&rest);
    let c1 = Term::hcomp(
        Term::vcomp(Term::corner(Corner::LL, d2.clone()), Term::corner(Corner::UL, cig.clone())).unwrap(),
        Term::inj(0, cig_p.clone(), rest.clone()).unwrap(),
    )
    .unwrap();
    let c2 = Term::hcomp(
        Term::hcomp(
            Term::vcomp(Term::corner(Corner::LL, d1.clone()), Term::corner(Corner::UL, gum.clone())).unwrap(),
            Term::inj(0, gum1.clone(), gum2.clone()).unwrap(),
        )
        .unwrap(),
        Term::inj(1, cig_p.clone(), rest.clone()).unwrap(),
    )
    .unwrap();
    let c3 = Term::hcomp(
        Term::hcomp(
            chain(vec![
                Term::corner(Corner::LL, d2.clone()),
                Term::corner(Corner::UL, gum.clone()),
                Term::hcomp(Term::vid(gum.clone()), Term::corner(Corner::UL, d1.clone())).unwrap(),
            ]),
            Term::inj(1, gum1, gum2).unwrap(),
        )
        .unwrap(),
        Term::inj(1, cig_p, rest).unwrap(),
    )
    .unwrap();
    vec![(c1, sig.mor("c")), (c2, sig.mor("g")), (c3, sig.mor("g'"))]
}

#[test]
fn vending_machine_pops_to_base() {
    let vm = vending();
    for ((c, expect), n) in customers(&vm).into_iter().zip([3, 4, 5]) {
        let t = Term::hcomp(c, vm.m.clone()).unwrap();
        let (end, form, trace) = pop(&t).unwrap_or_else(|e| panic!("{t}: {e}"));
        assert_eq!(form.kind(), ShapeKind::Base, "{end}");
        assert_eq!(end, Term::base(expect.clone()));
        assert_eq!(trace.replay(&[]).unwrap(), end);
        let betas = trace.count(|k| matches!(k, StepKind::Beta(_)));
        assert_eq!(betas, n);
    }
}

#[test]
fn pop_each_leaf() {
    let vm = vending();
    let mut leaves = vec![vm.m.clone()];
    for (c, _) in customers(&vm) {
        leaves.push(c);
    }
    for t in leaves {
        let (end, form, trace) = pop(&t).unwrap_or_else(|e| panic!("{t}: {e}"));
        assert!(is_popped(&end).is_some());
        assert_eq!(form.reassemble().unwrap(), end);
        assert_eq!(trace.replay(&[]).unwrap(), end);
        assert_eq!(end.ty(), t.ty());
    }
}
