//! Operational semantics: β-redexes, single steps, traces, the popped-form
//! normalizer, vertical splitting, and reduction together with base rules.

mod pop;
mod reduce;
mod rw;
mod split;

use thiserror::Error;

use crate::base::{enumerate_base_rewrites, BaseRule, Name};
use crate::term::{check_law, enumerate_struct_steps, path_to_string, Corner, Law, Node, Orientation, Path, Term, TypeError};

pub use pop::{is_popped, pop, PoppedForm, ShapeKind};
pub use reduce::{reduce_beta_random, reduce_combined, reduce_interleaved_random, Strategy};
pub(crate) use rw::{Ori, Rw};
pub use split::{context_decompose, split_base};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("type error: {0}")]
    Type(#[from] TypeError),
    #[error("invalid position {0}")]
    InvalidPosition(String),
    #[error("step does not match at {0}: {1}")]
    StepMismatch(String, String),
    #[error("term is not vertical")]
    NotVertical,
    #[error("term is neither left- nor right-closed")]
    NotClosed,
    #[error("term contains special subterms")]
    NotZeroSpecial,
    #[error("cell types differ: {0} vs {1}")]
    TypeMismatch(String, String),
    #[error("unexpected shape: {0}")]
    ShapeViolation(String),
    #[error("step budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("internal: {0}")]
    Internal(String),
}

/// The four β-rewrites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BetaRule {
    /// `A⌞ | A⌝ → 1_A`
    YankSend,
    /// `A⌜ | A⌟ → 1_A`
    YankRecv,
    /// `(a₀ × a₁) | πᵢ → aᵢ`
    ProdProj,
    /// `ᴨᵢ | (a₀ + a₁) → aᵢ`
    InjSum,
}

impl BetaRule {
    pub fn name(self) -> &'static str {
        match self {
            BetaRule::YankSend => "yank-send",
            BetaRule::YankRecv => "yank-recv",
            BetaRule::ProdProj => "prod-proj",
            BetaRule::InjSum => "inj-sum",
        }
    }

    pub fn parse(s: &str) -> Option<BetaRule> {
        [BetaRule::YankSend, BetaRule::YankRecv, BetaRule::ProdProj, BetaRule::InjSum].into_iter().find(|r| r.name() == s)
    }
}

/// The redex rule and result when `t` itself is a β-redex.
pub fn beta_redex(t: &Term) -> Option<(BetaRule, Term)> {
    let Node::HComp(x, y) = t.node() else { return None };
    match (x.node(), y.node()) {
        (Node::Corner(Corner::LL, a), Node::Corner(Corner::UR, b)) if a == b => Some((BetaRule::YankSend, Term::vid(a.clone()))),
        (Node::Corner(Corner::UL, a), Node::Corner(Corner::LR, b)) if a == b => Some((BetaRule::YankRecv, Term::vid(a.clone()))),
        (Node::Prod(a0, a1), Node::Proj(i, _, _)) => Some((BetaRule::ProdProj, if *i == 0 { a0.clone() } else { a1.clone() })),
        (Node::Inj(i, _, _), Node::Sum(a0, a1)) => Some((BetaRule::InjSum, if *i == 0 { a0.clone() } else { a1.clone() })),
        _ => None,
    }
}

/// Every syntactic β-redex in `a`, in preorder.
pub fn enumerate_beta_redexes(a: &Term) -> Vec<(Path, BetaRule)> {
    a.positions().into_iter().filter_map(|(p, t)| beta_redex(&t).map(|(r, _)| (p, r))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepKind {
    Beta(BetaRule),
    Struct(Law, Orientation),
    BaseRw(Name),
}

impl StepKind {
    pub fn label(&self) -> String {
        match self {
            StepKind::Beta(r) => format!("beta {}", r.name()),
            StepKind::Struct(l, o) => format!("struct {} {}", l.name(), o.name()),
            StepKind::BaseRw(n) => format!("base {n}"),
        }
    }
}

/// One rewrite at `path`; `before` and `after` are the subterms there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub kind: StepKind,
    pub path: Path,
    pub before: Term,
    pub after: Term,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub start: Term,
    pub steps: Vec<Step>,
    pub end: Term,
}

impl Trace {
    pub fn empty(t: Term) -> Trace {
        Trace { start: t.clone(), steps: Vec::new(), end: t }
    }

    /// Fold the steps over `start`, checking each one.
    pub fn replay(&self, rules: &[BaseRule]) -> Result<Term, EngineError> {
        let mut cur = self.start.clone();
        for s in &self.steps {
            cur = apply_step(&cur, s, rules)?;
            if cur.ty() != self.start.ty() {
                return Err(EngineError::StepMismatch(path_to_string(&s.path), "boundary changed".into()));
            }
        }
        Ok(cur)
    }

    pub fn count(&self, pred: impl Fn(&StepKind) -> bool) -> usize {
        self.steps.iter().filter(|s| pred(&s.kind)).count()
    }

    /// Append another trace that starts where this one ends.
    pub fn extend(&mut self, other: Trace) {
        debug_assert_eq!(self.end, other.start);
        self.steps.extend(other.steps);
        self.end = other.end;
    }
}

/// Every single step out of `a`: β-redexes, then base rewrites, then
/// structural steps forward before backward.
pub fn available_steps(a: &Term, rules: &[BaseRule]) -> Vec<Step> {
    let mut out = Vec::new();
    let positions = a.positions();
    for (path, t) in &positions {
        if let Some((r, after)) = beta_redex(t) {
            out.push(Step { kind: StepKind::Beta(r), path: path.clone(), before: t.clone(), after });
        }
    }
    for (path, t) in &positions {
        if let Node::Base(f) = t.node() {
            for w in enumerate_base_rewrites(f, rules) {
                out.push(Step { kind: StepKind::BaseRw(w.rule), path: path.clone(), before: t.clone(), after: Term::base(w.result) });
            }
        }
    }
    let (fwd, bwd): (Vec<_>, Vec<_>) = enumerate_struct_steps(a).into_iter().partition(|s| s.orientation == Orientation::Forward);
    out.extend(fwd.into_iter().chain(bwd).map(|s| Step {
        kind: StepKind::Struct(s.law, s.orientation),
        path: s.path,
        before: s.before,
        after: s.after,
    }));
    out
}

fn mismatch(s: &Step, why: &str) -> EngineError {
    EngineError::StepMismatch(path_to_string(&s.path), why.to_string())
}

/// Check `s` against `a` and return the rewritten term.
pub fn apply_step(a: &Term, s: &Step, rules: &[BaseRule]) -> Result<Term, EngineError> {
    let sub = a.at(&s.path).ok_or_else(|| EngineError::InvalidPosition(path_to_string(&s.path)))?;
    if *sub != s.before {
        return Err(mismatch(s, "subterm differs from the recorded one"));
    }
    let ok = match &s.kind {
        StepKind::Beta(rule) => beta_redex(sub).is_some_and(|(r, res)| r == *rule && res == s.after),
        StepKind::Struct(law, Orientation::Forward) => check_law(*law, &s.before, &s.after),
        StepKind::Struct(law, Orientation::Backward) => check_law(*law, &s.after, &s.before),
        StepKind::BaseRw(name) => match (s.before.node(), s.after.node()) {
            (Node::Base(f), Node::Base(g)) => enumerate_base_rewrites(f, rules).iter().any(|r| r.rule == *name && r.result == *g),
            _ => false,
        },
    };
    if !ok {
        return Err(mismatch(s, &format!("not an instance of {}", s.kind.label())));
    }
    Ok(a.replace(&s.path, s.after.clone())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::ObjectWord;
    use crate::protocol::ProtocolWord;

    fn a() -> ObjectWord {
        ObjectWord::atom("A")
    }

    #[test]
    fn redexes() {
        let y = Term::hcomp(Term::corner(Corner::LL, a()), Term::corner(Corner::UR, a())).unwrap();
        assert_eq!(enumerate_beta_redexes(&y), vec![(vec![], BetaRule::YankSend)]);
        let u = ProtocolWord::send(a());
        let second = Term::vcomp(Term::vid(a()), Term::corner(Corner::LL, a())).unwrap();
        let p = Term::prod(Term::corner(Corner::LL, a()), second.clone()).unwrap();
        let r = Term::hcomp(p, Term::proj(1, u.clone(), u).unwrap()).unwrap();
        let (rule, res) = beta_redex(&r).unwrap();
        assert_eq!(rule, BetaRule::ProdProj);
        assert_eq!(res, second);
        assert!(enumerate_beta_redexes(&Term::vid(a())).is_empty());
    }

    #[test]
    fn apply_recv_yank() {
        let y = Term::hcomp(Term::corner(Corner::UL, a()), Term::corner(Corner::LR, a())).unwrap();
        let s = Step { kind: StepKind::Beta(BetaRule::YankRecv), path: vec![], before: y.clone(), after: Term::vid(a()) };
        assert_eq!(apply_step(&y, &s, &[]).unwrap(), Term::vid(a()));
        let bad = Step { kind: StepKind::Beta(BetaRule::YankSend), ..s };
        assert!(apply_step(&y, &bad, &[]).is_err());
    }
}
