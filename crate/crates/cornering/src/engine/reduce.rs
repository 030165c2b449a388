//! Reduction with β together with base rewrite rules.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::base::{enumerate_base_rewrites, BaseRewrite, BaseRule};
use crate::term::{fuse_maximal, Dir, Node, Path, Term};

use super::pop::pop_in;
use super::rw::{Ori, Rw};
use super::{enumerate_beta_redexes, EngineError, StepKind, Trace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Pop to expose and fire every β-redex, then rewrite base leaves.
    #[default]
    PopFirst,
    /// Alternate one β step and one base rewrite.
    Interleaved,
    /// Normalize every base leaf before each pop.
    Exhaustive,
}

impl Strategy {
    pub fn parse(s: &str) -> Option<Strategy> {
        match s {
            "pop-first" => Some(Strategy::PopFirst),
            "interleaved" => Some(Strategy::Interleaved),
            "exhaustive" => Some(Strategy::Exhaustive),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Strategy::PopFirst => "pop-first",
            Strategy::Interleaved => "interleaved",
            Strategy::Exhaustive => "exhaustive",
        }
    }
}

fn fuse_all(rw: &mut Rw) -> Result<(), EngineError> {
    let (steps, _) = fuse_maximal(&rw.term);
    for s in steps {
        rw.record(StepKind::Struct(s.law, s.orientation), s.path, s.before, s.after)?;
    }
    Ok(())
}

fn base_rewrites(t: &Term, rules: &[BaseRule]) -> Vec<(Path, BaseRewrite)> {
    if rules.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (p, s) in t.positions() {
        if let Node::Base(f) = s.node() {
            out.extend(enumerate_base_rewrites(f, rules).into_iter().map(|r| (p.clone(), r)));
        }
    }
    out
}

fn fire(rw: &mut Rw, p: Path, r: BaseRewrite) -> Result<(), EngineError> {
    let before = rw.get(&p)?;
    rw.record(StepKind::BaseRw(r.rule), p, before, Term::base(r.result))
}

fn fire_beta(rw: &mut Rw, p: &[Dir]) -> Result<(), EngineError> {
    rw.beta(Ori::Id, p, &[])
}

/// Reduce `a` under β and the rules until no step applies. Base leaves are
/// fused maximally before rules are matched.
pub fn reduce_combined(a: &Term, rules: &[BaseRule], strategy: Strategy, max_steps: usize) -> Result<(Term, Trace), EngineError> {
    let mut rw = Rw::new(a.clone());
    rw.max_steps = Some(max_steps);
    match strategy {
        Strategy::PopFirst => loop {
            pop_in(&mut rw, &[])?;
            fuse_all(&mut rw)?;
            match base_rewrites(&rw.term, rules).into_iter().next() {
                Some((p, r)) => fire(&mut rw, p, r)?,
                None => break,
            }
        },
        Strategy::Interleaved => loop {
            let mut progressed = false;
            if let Some((p, _)) = enumerate_beta_redexes(&rw.term).into_iter().next() {
                fire_beta(&mut rw, &p)?;
                progressed = true;
            }
            fuse_all(&mut rw)?;
            if let Some((p, r)) = base_rewrites(&rw.term, rules).into_iter().next() {
                fire(&mut rw, p, r)?;
                progressed = true;
            }
            if !progressed {
                let before = rw.term.special();
                pop_in(&mut rw, &[])?;
                fuse_all(&mut rw)?;
                if rw.term.special() == before && base_rewrites(&rw.term, rules).is_empty() {
                    break;
                }
            }
        },
        Strategy::Exhaustive => loop {
            fuse_all(&mut rw)?;
            let mut fired = false;
            while let Some((p, r)) = base_rewrites(&rw.term, rules).into_iter().next() {
                fire(&mut rw, p, r)?;
                fired = true;
            }
            let before = rw.term.special();
            pop_in(&mut rw, &[])?;
            fuse_all(&mut rw)?;
            if !fired && rw.term.special() == before && base_rewrites(&rw.term, rules).is_empty() {
                break;
            }
        },
    }
    let t = rw.term.clone();
    Ok((t, rw.into_trace()))
}

/// Pop a random composite subterm that still has special subterms; returns
/// whether that fired a β step.
fn random_pop<R: Rng>(rw: &mut Rw, rng: &mut R) -> Result<bool, EngineError> {
    let cands: Vec<Path> = rw
        .term
        .positions()
        .into_iter()
        .filter(|(_, t)| t.special() > 0 && matches!(t.node(), Node::VComp(..) | Node::HComp(..)))
        .map(|(p, _)| p)
        .collect();
    let Some(p) = cands.choose(rng) else { return Ok(false) };
    let before = rw.term.special();
    pop_in(rw, p)?;
    Ok(rw.term.special() < before)
}

/// Pop the whole term; returns whether anything is left to do.
fn settle(rw: &mut Rw, rules: &[BaseRule]) -> Result<bool, EngineError> {
    let before = rw.term.special();
    pop_in(rw, &[])?;
    fuse_all(rw)?;
    Ok(rw.term.special() < before || !enumerate_beta_redexes(&rw.term).is_empty() || !base_rewrites(&rw.term, rules).is_empty())
}

/// A maximal β strategy that fires syntactic redexes in random order and
/// pops random subterms to expose new ones.
pub fn reduce_beta_random<R: Rng>(a: &Term, rng: &mut R, max_steps: usize) -> Result<(Term, Trace), EngineError> {
    let mut rw = Rw::new(a.clone());
    rw.max_steps = Some(max_steps);
    loop {
        let reds = enumerate_beta_redexes(&rw.term);
        if let Some((p, _)) = reds.choose(rng) {
            fire_beta(&mut rw, p)?;
            continue;
        }
        if rng.gen_bool(0.7) && random_pop(&mut rw, rng)? {
            continue;
        }
        if !settle(&mut rw, &[])? {
            break;
        }
    }
    let t = rw.term.clone();
    Ok((t, rw.into_trace()))
}

/// Interleave β steps and base rewrites in random order.
pub fn reduce_interleaved_random<R: Rng>(
    a: &Term,
    rules: &[BaseRule],
    rng: &mut R,
    max_steps: usize,
) -> Result<(Term, Trace), EngineError> {
    let mut rw = Rw::new(a.clone());
    rw.max_steps = Some(max_steps);
    loop {
        fuse_all(&mut rw)?;
        let reds = enumerate_beta_redexes(&rw.term);
        let brs = base_rewrites(&rw.term, rules);
        let pick_beta = match (reds.is_empty(), brs.is_empty()) {
            (false, false) => rng.gen_bool(0.5),
            (false, true) => true,
            (true, false) => false,
            (true, true) => {
                if rng.gen_bool(0.5) && random_pop(&mut rw, rng)? {
                    continue;
                }
                if !settle(&mut rw, rules)? {
                    break;
                }
                continue;
            }
        };
        if pick_beta {
            let (p, _) = reds.choose(rng).expect("nonempty").clone();
            fire_beta(&mut rw, &p)?;
        } else {
            let (p, r) = brs.choose(rng).expect("nonempty").clone();
            fire(&mut rw, p, r)?;
        }
    }
    let t = rw.term.clone();
    Ok((t, rw.into_trace()))
}
