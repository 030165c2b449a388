//! Seeded property suites over random terms. Each suite reports how many
//! cases ran, how many failed, and the first failing seed.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::base::{base_eq, slice_measure, ObjectWord, Signature};
use crate::coherence::{cce_test, normalize_vertical, phi, samples, CceBudget, CceResult, GenConfig, Target, TermGen};
use crate::engine::{pop, reduce_beta_random, reduce_interleaved_random, split_base, StepKind, Trace};
use crate::protocol::ProtocolWord;
use crate::term::{eq_struct_bounded, eta_corner_instances, eta_instances, EqResult, EquationInstance, EtaLaw, Node, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Termination,
    Confluence,
    Measure,
    Eta,
    Commutation,
    Flat,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Termination, Suite::Confluence, Suite::Measure, Suite::Eta, Suite::Commutation, Suite::Flat];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Termination => "termination",
            Suite::Confluence => "confluence",
            Suite::Measure => "measure",
            Suite::Eta => "eta",
            Suite::Commutation => "commutation",
            Suite::Flat => "flat",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }

    /// The word used in the summary line for a passing case.
    fn verdict(self) -> &'static str {
        match self {
            Suite::Termination => "terminated",
            Suite::Confluence => "joinable",
            Suite::Measure => "decreasing",
            Suite::Eta => "consistent",
            Suite::Commutation => "commuting",
            Suite::Flat => "round-tripped",
        }
    }

    pub fn default_count(self) -> usize {
        match self {
            Suite::Termination => 1000,
            Suite::Confluence => 500,
            Suite::Measure | Suite::Commutation => 300,
            Suite::Eta => 100,
            Suite::Flat => 500,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub seed: u64,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub run: usize,
    pub failures: usize,
    pub first_failure: Option<Failure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}/{} {}", self.suite.name(), self.run - self.failures, self.run, self.suite.verdict())?;
        if let Some(x) = &self.first_failure {
            write!(f, "; first failure at seed {}: {}", x.seed, x.message)?;
        }
        Ok(())
    }
}

/// Step budget for the randomized strategies.
const BUDGET: usize = 200_000;

/// Generator weights used by the suites.
pub fn harness_config() -> GenConfig {
    GenConfig { unit_protocol: 0.15, max_protocol: 3, ..GenConfig::default() }
}

/// The sum of generator occurrences over all base leaves.
pub fn measure_m(t: &Term) -> u64 {
    t.positions()
        .iter()
        .map(|(_, s)| match s.node() {
            Node::Base(f) => slice_measure(f),
            _ => 0,
        })
        .sum()
}

/// Run `count` cases starting at `seed`. Case `i` uses seed `seed + i`; a
/// seed for which no term of the requested shape exists is skipped.
pub fn run_suite(suite: Suite, seed: u64, count: usize) -> SuiteReport {
    let mut report = SuiteReport { suite, run: 0, failures: 0, first_failure: None };
    let mut s = seed;
    let mut skipped = 0;
    while report.run < count && skipped <= count {
        let outcome = match suite {
            Suite::Termination => termination_case(s),
            Suite::Confluence => confluence_case(s),
            Suite::Measure => measure_case(s),
            Suite::Eta => eta_case(s),
            Suite::Commutation => commutation_case(s),
            Suite::Flat => flat_case(s),
        };
        match outcome {
            None => skipped += 1,
            Some(Ok(())) => report.run += 1,
            Some(Err(message)) => {
                report.run += 1;
                report.failures += 1;
                report.first_failure.get_or_insert(Failure { seed: s, message });
            }
        }
        s = s.wrapping_add(1);
    }
    report
}

type Case = Option<Result<(), String>>;

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// A random term over the four-generator signature with a random boundary
/// shape.
pub fn termination_term(seed: u64) -> Option<Term> {
    let sig = samples::four_generator();
    let mut g = TermGen::new(&sig, harness_config(), seed);
    let target = match seed % 3 {
        0 => Target::Vertical,
        1 => Target::LeftClosed(g.protocol(1)),
        _ => {
            let (u, v) = (g.protocol(1), g.protocol(1));
            Target::Boundary(u, v)
        }
    };
    g.term(40, &target).ok()
}

/// Every β step lowers `#` and every structural step keeps it.
pub fn check_special_measure(tr: &Trace) -> Result<(), String> {
    let mut cur = tr.start.special();
    for (i, s) in tr.steps.iter().enumerate() {
        let next = cur + s.after.special() - s.before.special();
        let ok = match s.kind {
            StepKind::Beta(_) => next < cur,
            StepKind::Struct(..) => next == cur,
            StepKind::BaseRw(_) => next == cur,
        };
        if !ok {
            return Err(format!("step {} ({}) took # from {cur} to {next}", i + 1, s.kind.label()));
        }
        cur = next;
    }
    Ok(())
}

fn termination_case(seed: u64) -> Case {
    let t = termination_term(seed)?;
    Some(pop(&t).map_err(|e| format!("pop failed: {e}")).and_then(|(end, _, tr)| {
        check(tr.replay(&[]).as_ref() == Ok(&end), || "trace does not replay".into())?;
        check_special_measure(&tr)
    }))
}

fn vertical(sig: &Signature, seed: u64, size: usize) -> Option<Term> {
    TermGen::new(sig, harness_config(), seed).term(size, &Target::Vertical).ok()
}

fn confluence_case(seed: u64) -> Case {
    let t = vertical(&samples::four_generator(), seed, 30)?;
    Some(confluence_of(&t, seed))
}

/// Pop and three randomized maximal β strategies agree on `t`.
pub fn confluence_of(t: &Term, seed: u64) -> Result<(), String> {
    let f = normalize_vertical(t, &[]).map_err(|e| format!("pop: {e}"))?.f;
    for k in 0..3u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(31).wrapping_add(k));
        let (end, tr) = reduce_beta_random(t, &mut rng, BUDGET).map_err(|e| format!("strategy {k}: {e}"))?;
        check(tr.replay(&[]).as_ref() == Ok(&end), || format!("strategy {k}: trace does not replay"))?;
        match end.node() {
            Node::Base(g) if base_eq(&f, g) => {}
            _ => return Err(format!("strategy {k} reached {end}, pop reached {}", Term::base(f.clone()))),
        }
    }
    Ok(())
}

fn bakery_term(seed: u64) -> Option<(Signature, Term)> {
    let sig = samples::bakery();
    let t = vertical(&sig, seed, 30)?;
    Some((sig, t))
}

/// `⟨#, m⟩` never increases, and drops strictly on β and base steps.
pub fn check_lex_measure(tr: &Trace) -> Result<(), String> {
    let mut cur = (tr.start.special(), measure_m(&tr.start));
    let mut term = tr.start.clone();
    for (i, s) in tr.steps.iter().enumerate() {
        term = term.replace(&s.path, s.after.clone()).map_err(|e| e.to_string())?;
        let next = (term.special(), measure_m(&term));
        let ok = match s.kind {
            StepKind::Struct(..) => next <= cur,
            _ => next < cur,
        };
        if !ok {
            return Err(format!("step {} ({}) took <#, m> from {cur:?} to {next:?}", i + 1, s.kind.label()));
        }
        cur = next;
    }
    Ok(())
}

fn interleavings(sig: &Signature, t: &Term, seed: u64) -> Result<Vec<(Term, Trace)>, String> {
    (0..4u64)
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(37).wrapping_add(k));
            let (end, tr) = reduce_interleaved_random(t, &sig.rules, &mut rng, BUDGET).map_err(|e| format!("interleaving {k}: {e}"))?;
            check(tr.replay(&sig.rules).as_ref() == Ok(&end), || format!("interleaving {k}: trace does not replay"))?;
            Ok((end, tr))
        })
        .collect()
}

fn measure_case(seed: u64) -> Case {
    let (sig, t) = bakery_term(seed)?;
    Some(interleavings(&sig, &t, seed).and_then(|runs| runs.iter().try_for_each(|(_, tr)| check_lex_measure(tr))))
}

fn commutation_case(seed: u64) -> Case {
    let (sig, t) = bakery_term(seed)?;
    Some(commutation_of(&sig, &t, seed))
}

/// Four random interleavings of β and base steps reach the same base leaf.
pub fn commutation_of(sig: &Signature, t: &Term, seed: u64) -> Result<(), String> {
    let runs = interleavings(sig, t, seed)?;
    let ends: Vec<_> = runs.iter().map(|(e, _)| e.clone()).collect();
    let first = ends[0].as_base().ok_or_else(|| format!("interleaving 0 stopped at {}", ends[0]))?;
    for (k, e) in ends.iter().enumerate().skip(1) {
        match e.as_base() {
            Some(f) if base_eq(first, f) => {}
            _ => return Err(format!("interleaving {k} reached {e}, interleaving 0 reached {}", ends[0])),
        }
    }
    Ok(())
}

/// The η-schemas in the order the eta suite cycles through them.
pub const ETA_LAWS: [EtaLaw; 4] = [EtaLaw::CornerSend, EtaLaw::CornerRecv, EtaLaw::Pair, EtaLaw::Copair];

/// A seeded instance of `law`.
pub fn eta_instance(law: EtaLaw, seed: u64) -> Option<EquationInstance> {
    let sig = samples::four_generator();
    let mut g = TermGen::new(&sig, harness_config(), seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let corner = |k: usize, rng: &mut ChaCha8Rng| {
        let n = rng.gen_range(1..=2);
        let a = ObjectWord((0..n).map(|_| sig.objects[rng.gen_range(0..sig.objects.len())].clone()).collect());
        eta_corner_instances(&a).into_iter().nth(k)
    };
    match law {
        EtaLaw::CornerSend => corner(0, &mut rng),
        EtaLaw::CornerRecv => corner(1, &mut rng),
        EtaLaw::Pair | EtaLaw::Copair => {
            let (u, w, other) = (g.protocol(1), g.protocol(1), g.protocol(1));
            let target = if law == EtaLaw::Pair {
                Target::Boundary(other, ProtocolWord::times(u, w))
            } else {
                Target::Boundary(ProtocolWord::plus(u, w), other)
            };
            let h = g.term(16, &target).ok()?;
            eta_instances(&h).ok()?.into_iter().find(|i| i.law == law.name())
        }
    }
}

/// Ten sampled closing contexts never separate the two sides of `inst`.
pub fn eta_in_context(inst: &EquationInstance, seed: u64) -> Result<(), String> {
    let budget = CceBudget { seed, contexts: 10, size: 12 };
    match cce_test(&inst.lhs, &inst.rhs, &samples::four_generator(), &budget) {
        Ok(CceResult::Consistent { tested: 10 }) => Ok(()),
        Ok(CceResult::Consistent { tested }) => Err(format!("{}: only {tested} contexts closed the boundary", inst.law)),
        Ok(CceResult::Counterexample { l, r }) => Err(format!("{}: separated by {l} and {r}", inst.law)),
        Err(e) => Err(format!("{}: {e}", inst.law)),
    }
}

fn eta_case(seed: u64) -> Case {
    let inst = eta_instance(ETA_LAWS[(seed % 4) as usize], seed)?;
    Some(eta_in_context(&inst, seed))
}

/// A left-closed term whose right boundary has at least two atoms, with a
/// split point strictly inside it.
pub fn split_term(seed: u64) -> Option<(Term, usize)> {
    let sig = samples::four_generator();
    let mut g = TermGen::new(&sig, harness_config(), seed);
    let w = g.protocol(1).concat(&g.protocol(1));
    if w.0.len() < 2 {
        return None;
    }
    let a = g.term(24, &Target::LeftClosed(w.clone())).ok()?;
    let k = g.rng.gen_range(1..w.0.len());
    Some((a, k))
}

/// `split_base(a, k)` yields `a₀ : ⟨I|A→C|U⟩` and `a₁ : ⟨I|C→B|V⟩` with
/// `|U| = k`, its trace ends at `a₀ · a₁`, and sampled closures of `a` and
/// `a₀ · a₁` normalize equal.
pub fn split_check(a: &Term, k: usize, seed: u64) -> Result<(), String> {
    let (a0, a1, tr) = split_base(a, k).map_err(|e| format!("split_base: {e}"))?;
    let (t, t0, t1) = (a.ty(), a0.ty(), a1.ty());
    let (u, v) = t.right.split_at(k);
    let typed = t0.left.is_unit()
        && t1.left.is_unit()
        && t0.top == t.top
        && t1.bottom == t.bottom
        && t0.bottom == t1.top
        && t0.right == u
        && t1.right == v;
    check(typed, || format!("components typed {t0} and {t1} for {t}"))?;
    let whole = Term::vcomp(a0, a1).map_err(|e| e.to_string())?;
    check(tr.replay(&[]).as_ref() == Ok(&whole), || "trace does not end at the recomposition".into())?;
    let budget = CceBudget { seed, contexts: 10, size: 12 };
    match cce_test(a, &whole, &samples::four_generator(), &budget) {
        Ok(CceResult::Consistent { .. }) => Ok(()),
        Ok(CceResult::Counterexample { l, r }) => Err(format!("closure by {l} and {r} separates a from its split")),
        Err(e) => Err(e.to_string()),
    }
}

/// A zero-special vertical term.
pub fn flat_term(seed: u64) -> Option<Term> {
    TermGen::new(&samples::four_generator(), GenConfig::zero_special(), seed).term(30, &Target::Vertical).ok()
}

fn flat_case(seed: u64) -> Case {
    let a = flat_term(seed)?;
    Some(flat_of(&a))
}

/// `φ(⌜φ(a)⌝) = φ(a)` and `⌜φ(a)⌝` is structurally equal to `a`.
pub fn flat_of(a: &Term) -> Result<(), String> {
    let f = phi(a).map_err(|e| e.to_string())?;
    let leaf = Term::base(f.clone());
    check(phi(&leaf).as_ref() == Ok(&f), || "phi of a leaf differs from its morphism".into())?;
    check(eq_struct_bounded(&leaf, a, 2 * a.size() + 8) == EqResult::Equal, || format!("{a} not shown equal to {leaf}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_on_a_few_seeds() {
        for s in Suite::ALL {
            let r = run_suite(s, 0, 12);
            assert_eq!(r.run, 12, "{r}");
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn report_line() {
        let r = SuiteReport { suite: Suite::Confluence, run: 500, failures: 0, first_failure: None };
        assert_eq!(r.to_string(), "confluence: 500/500 joinable");
        assert_eq!(Suite::parse("flat"), Some(Suite::Flat));
    }

    #[test]
    fn split_holds_on_a_few_seeds() {
        let mut n = 0;
        for seed in 0..40 {
            if let Some((a, k)) = split_term(seed) {
                split_check(&a, k, seed).unwrap();
                n += 1;
            }
        }
        assert!(n >= 10, "{n}");
    }

    #[test]
    fn measure_m_counts_generators() {
        let sig = samples::bakery();
        let t = Term::vcomp(Term::base(sig.mor("bread")), Term::base(sig.mor("eat"))).unwrap();
        assert_eq!(measure_m(&t), 2);
    }
}
