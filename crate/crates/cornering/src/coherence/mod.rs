//! Vertical cells: extraction of the underlying base morphism, normal forms,
//! the equality decision, and closed-context testing of arbitrary cells.

mod enumerate;
mod gen;
mod join;
mod oracle;
pub mod samples;

use rand::Rng;

use crate::base::{base_eq, mor_comp, mor_id, mor_tensor, BaseMor, BaseRule, ObjectWord, Signature};
use crate::engine::{pop, reduce_combined, EngineError, PoppedForm, Strategy, Trace};
use crate::term::{Node, Term};

pub use enumerate::{enumerate_terms, enumerate_vertical, leaf_alphabet};
pub use gen::{gen_term, GenConfig, GenError, Target, TermGen};
pub use join::{components, find_base_leaf, joinable_bounded, reach, successors, successors_within, JoinConfig, Joinability};
pub use oracle::{oracle_agreement, OracleConfig, OracleReport};

/// Step budget for normalization with base rules.
pub const NORMALIZE_BUDGET: usize = 1 << 20;

/// A vertical cell reduced to a single base leaf.
#[derive(Clone, Debug)]
pub struct VerticalNormal {
    pub f: BaseMor,
    pub trace: Trace,
}

/// The base morphism of a zero-special vertical term.
pub fn phi(a: &Term) -> Result<BaseMor, EngineError> {
    if !a.ty().is_vertical() {
        return Err(EngineError::NotVertical);
    }
    if a.special() != 0 {
        return Err(EngineError::NotZeroSpecial);
    }
    phi_rec(a)
}

fn phi_rec(a: &Term) -> Result<BaseMor, EngineError> {
    match a.node() {
        Node::Base(f) => Ok(f.clone()),
        Node::VId(x) => Ok(mor_id(x)),
        Node::HId(u) if u.is_unit() => Ok(mor_id(&ObjectWord::unit())),
        Node::VComp(x, y) => mor_comp(&phi_rec(x)?, &phi_rec(y)?).map_err(|e| EngineError::Internal(e.to_string())),
        Node::HComp(x, y) => Ok(mor_tensor(&phi_rec(x)?, &phi_rec(y)?)),
        _ => Err(EngineError::NotZeroSpecial),
    }
}

/// Reduce a vertical cell to `⌜f⌝`, then normalize `f` under `rules`.
pub fn normalize_vertical(a: &Term, rules: &[BaseRule]) -> Result<VerticalNormal, EngineError> {
    if !a.ty().is_vertical() {
        return Err(EngineError::NotVertical);
    }
    if rules.is_empty() {
        let (end, form, trace) = pop(a)?;
        return match form {
            PoppedForm::Base { f } => Ok(VerticalNormal { f, trace }),
            other => Err(EngineError::ShapeViolation(format!("vertical cell popped to {} shape: {end}", other.kind().name()))),
        };
    }
    let (end, trace) = reduce_combined(a, rules, Strategy::PopFirst, NORMALIZE_BUDGET)?;
    match end.node() {
        Node::Base(f) => Ok(VerticalNormal { f: f.clone(), trace }),
        _ => Err(EngineError::ShapeViolation(format!("vertical cell reduced to {end}"))),
    }
}

fn check_same_type(a: &Term, b: &Term) -> Result<(), EngineError> {
    if a.ty() != b.ty() {
        return Err(EngineError::TypeMismatch(a.ty().to_string(), b.ty().to_string()));
    }
    Ok(())
}

/// Equality of vertical cells, decided by comparing normal forms.
pub fn decide_vertical_eq(a: &Term, b: &Term, rules: &[BaseRule]) -> Result<bool, EngineError> {
    if !a.ty().is_vertical() || !b.ty().is_vertical() {
        return Err(EngineError::NotVertical);
    }
    check_same_type(a, b)?;
    let fa = normalize_vertical(a, rules)?.f;
    let fb = normalize_vertical(b, rules)?.f;
    Ok(base_eq(&fa, &fb))
}

/// How many closing contexts to try and how large they may be.
#[derive(Clone, Debug)]
pub struct CceBudget {
    pub seed: u64,
    pub contexts: usize,
    pub size: usize,
}

impl Default for CceBudget {
    fn default() -> Self {
        CceBudget { seed: 0, contexts: 10, size: 12 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CceResult {
    Consistent { tested: usize },
    Counterexample { l: Term, r: Term },
}

/// Close `a` and `b` on both sides with sampled cells `l`, `r` and compare
/// the vertical normal forms of `l|a|r` and `l|b|r`.
pub fn cce_test(a: &Term, b: &Term, sig: &Signature, budget: &CceBudget) -> Result<CceResult, EngineError> {
    check_same_type(a, b)?;
    let (u, v) = (a.ty().left.clone(), a.ty().right.clone());
    let mut g = TermGen::new(sig, GenConfig::default(), budget.seed);
    let mut tested = 0;
    for _ in 0..budget.contexts {
        let Some(l) = closing(&mut g, Target::LeftClosed(u.clone()), budget.size, |g| g.opener(&u)) else { continue };
        let Some(r) = closing(&mut g, Target::RightClosed(v.clone()), budget.size, |g| g.closer(&v)) else { continue };
        let la = Term::hcomp(Term::hcomp(l.clone(), a.clone())?, r.clone())?;
        let lb = Term::hcomp(Term::hcomp(l.clone(), b.clone())?, r.clone())?;
        let fa = normalize_vertical(&la, &sig.rules)?.f;
        let fb = normalize_vertical(&lb, &sig.rules)?.f;
        tested += 1;
        if !base_eq(&fa, &fb) {
            return Ok(CceResult::Counterexample { l, r });
        }
    }
    Ok(CceResult::Consistent { tested })
}

/// Half the time a direct opener or closer of the boundary, otherwise a
/// random cell of that boundary.
fn closing(g: &mut TermGen, target: Target, size: usize, direct: impl Fn(&mut TermGen) -> Option<Term>) -> Option<Term> {
    if g.rng.gen_bool(0.5) {
        if let Some(t) = direct(g) {
            return Some(t);
        }
    }
    g.term(size, &target).ok().or_else(|| direct(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Corner;

    fn ab() -> (Signature, ObjectWord, ObjectWord) {
        let s = samples::two_generator();
        let (a, b) = (s.word(&["A"]), s.word(&["B"]));
        (s, a, b)
    }

    #[test]
    fn phi_clauses() {
        let (s, a, _) = ab();
        let f = s.mor("f");
        let g = s.mor("g");
        assert_eq!(phi(&Term::base(f.clone())).unwrap(), f);
        assert_eq!(phi(&Term::vid(a.clone())).unwrap(), mor_id(&a));
        let fg = Term::vcomp(Term::base(f.clone()), Term::base(g.clone())).unwrap();
        assert_eq!(phi(&fg).unwrap(), mor_comp(&f, &g).unwrap());
        let y = Term::hcomp(Term::corner(Corner::LL, a.clone()), Term::corner(Corner::UR, a.clone())).unwrap();
        assert_eq!(phi(&y), Err(EngineError::NotZeroSpecial));
        assert_eq!(phi(&Term::corner(Corner::UR, a)), Err(EngineError::NotVertical));
    }

    #[test]
    fn decide_examples() {
        let (s, a, _) = ab();
        let y = Term::hcomp(Term::corner(Corner::LL, a.clone()), Term::corner(Corner::UR, a.clone())).unwrap();
        assert!(decide_vertical_eq(&y, &Term::vid(a.clone()), &[]).unwrap());
        let f = Term::base(s.mor("f"));
        let g = Term::base(s.mor("g"));
        let fg = Term::vcomp(f.clone(), g.clone()).unwrap();
        let gf = Term::vcomp(Term::vid(a.clone()), fg.clone()).unwrap();
        assert!(decide_vertical_eq(&fg, &gf, &[]).unwrap());
        assert!(!decide_vertical_eq(&fg, &Term::vid(a), &[]).unwrap());
        assert!(matches!(decide_vertical_eq(&f, &g, &[]), Err(EngineError::TypeMismatch(..))));
    }

    #[test]
    fn normalize_identity() {
        let (_, a, _) = ab();
        let n = normalize_vertical(&Term::vid(a.clone()), &[]).unwrap();
        assert_eq!(n.f, mor_id(&a));
        assert_eq!(n.trace.replay(&[]).unwrap(), Term::base(mor_id(&a)));
    }

    #[test]
    fn cce_reflexive_and_refutes_swapped_pair() {
        let (s, _, b) = ab();
        let x = Term::hcomp(Term::base(s.mor("f")), Term::corner(Corner::LL, b.clone())).unwrap();
        let p = Term::prod(x.clone(), x).unwrap();
        let budget = CceBudget { seed: 1, contexts: 8, size: 8 };
        assert_eq!(cce_test(&p, &p, &s, &budget).unwrap(), CceResult::Consistent { tested: 8 });
        let x0 = Term::hcomp(Term::base(s.mor("f")), Term::corner(Corner::LL, b.clone())).unwrap();
        let x1 = Term::vcomp(Term::base(s.mor("f")), Term::vcomp(Term::base(s.mor("g")), Term::base(s.mor("f"))).unwrap())
            .and_then(|t| Term::hcomp(t, Term::corner(Corner::LL, b.clone())))
            .unwrap();
        let p01 = Term::prod(x0.clone(), x1.clone()).unwrap();
        let p10 = Term::prod(x1, x0).unwrap();
        match cce_test(&p01, &p10, &s, &CceBudget { seed: 3, contexts: 20, size: 8 }).unwrap() {
            CceResult::Counterexample { r, .. } => assert!(r.positions().iter().any(|(_, t)| matches!(t.node(), Node::Proj(..)))),
            other => panic!("expected a counterexample, got {other:?}"),
        }
    }
}
