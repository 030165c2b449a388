//! A recording rewriter. Derivations are written once in "view" coordinates;
//! the mirrored view swaps the two sides of every horizontal composite, which
//! turns each case into its left-right dual.

use crate::term::{apply_law, fuse_steps, idcomp_split, path_to_string, Dir, Law, Orientation, Path, Term};

use super::{beta_redex, EngineError, Step, StepKind, Trace};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Ori {
    Id,
    Mir,
}

impl Ori {
    pub(crate) fn dir(self, d: Dir) -> Dir {
        match self {
            Ori::Id => d,
            Ori::Mir => d.mirror(),
        }
    }

    pub(crate) fn path(self, p: &[Dir]) -> Path {
        p.iter().map(|d| self.dir(*d)).collect()
    }

    pub(crate) fn law(self, law: Law, o: Orientation) -> (Law, Orientation) {
        match (self, law) {
            (Ori::Id, _) => (law, o),
            (Ori::Mir, Law::HAssoc) => (law, o.flip()),
            (Ori::Mir, Law::HUnitL) => (Law::HUnitR, o),
            (Ori::Mir, Law::HUnitR) => (Law::HUnitL, o),
            (Ori::Mir, _) => (law, o),
        }
    }
}

pub(crate) fn join(base: &[Dir], rel: &[Dir]) -> Path {
    let mut p = base.to_vec();
    p.extend_from_slice(rel);
    p
}

pub(crate) struct Rw {
    start: Term,
    pub(crate) term: Term,
    pub(crate) steps: Vec<Step>,
    pub(crate) max_steps: Option<usize>,
}

use Orientation::{Backward as B, Forward as F};

impl Rw {
    pub(crate) fn new(t: Term) -> Rw {
        Rw { start: t.clone(), term: t, steps: Vec::new(), max_steps: None }
    }

    pub(crate) fn into_trace(self) -> Trace {
        Trace { start: self.start, steps: self.steps, end: self.term }
    }

    pub(crate) fn get(&self, path: &[Dir]) -> Result<Term, EngineError> {
        self.term.at(path).cloned().ok_or_else(|| EngineError::InvalidPosition(path_to_string(path)))
    }

    /// The subterm at a view position.
    pub(crate) fn sub(&self, o: Ori, base: &[Dir], rel: &[Dir]) -> Result<Term, EngineError> {
        self.get(&join(base, &o.path(rel)))
    }

    pub(crate) fn record(&mut self, kind: StepKind, path: Path, before: Term, after: Term) -> Result<(), EngineError> {
        if let Some(m) = self.max_steps {
            if self.steps.len() >= m {
                return Err(EngineError::BudgetExceeded(m));
            }
        }
        self.term = self.term.replace(&path, after.clone())?;
        self.steps.push(Step { kind, path, before, after });
        Ok(())
    }

    fn fail(&self, what: &str, path: &[Dir]) -> EngineError {
        let at = self.term.at(path).map(|t| t.to_string()).unwrap_or_default();
        EngineError::Internal(format!("{what} does not apply at {} to {at}", path_to_string(path)))
    }

    /// Apply a basic equation given in view coordinates.
    pub(crate) fn st(&mut self, o: Ori, base: &[Dir], rel: &[Dir], law: Law, orient: Orientation) -> Result<(), EngineError> {
        let (law, orient) = o.law(law, orient);
        let path = join(base, &o.path(rel));
        let before = self.get(&path)?;
        let after = apply_law(law, orient, &before).ok_or_else(|| self.fail(&format!("{} {}", law.name(), orient.name()), &path))?;
        self.record(StepKind::Struct(law, orient), path, before, after)
    }

    pub(crate) fn fwd(&mut self, o: Ori, base: &[Dir], rel: &[Dir], law: Law) -> Result<(), EngineError> {
        self.st(o, base, rel, law, F)
    }

    pub(crate) fn bwd(&mut self, o: Ori, base: &[Dir], rel: &[Dir], law: Law) -> Result<(), EngineError> {
        self.st(o, base, rel, law, B)
    }

    /// `id_{U·W} → id_U · id_W` with `|U| = k`.
    pub(crate) fn idcomp(&mut self, o: Ori, base: &[Dir], rel: &[Dir], k: usize) -> Result<(), EngineError> {
        let path = join(base, &o.path(rel));
        let before = self.get(&path)?;
        let after = idcomp_split(&before, k).ok_or_else(|| self.fail("idcomp split", &path))?;
        self.record(StepKind::Struct(Law::IdComp, B), path, before, after)
    }

    pub(crate) fn beta(&mut self, o: Ori, base: &[Dir], rel: &[Dir]) -> Result<(), EngineError> {
        let path = join(base, &o.path(rel));
        let before = self.get(&path)?;
        let (rule, after) = beta_redex(&before).ok_or_else(|| self.fail("beta", &path))?;
        self.record(StepKind::Beta(rule), path, before, after)
    }

    /// Fuse a zero-special subterm into one base leaf.
    pub(crate) fn fuse(&mut self, o: Ori, base: &[Dir], rel: &[Dir]) -> Result<(), EngineError> {
        let path = join(base, &o.path(rel));
        let t = self.get(&path)?;
        let (steps, _) = fuse_steps(&t).ok_or_else(|| self.fail("fusion", &path))?;
        for s in steps {
            let s = s.under(&path);
            self.record(StepKind::Struct(s.law, s.orientation), s.path, s.before, s.after)?;
        }
        Ok(())
    }

    /// `𝓛[a] | (b · id_W) ≗ 𝓛[a | b]` for the term at `base`, with the hole of
    /// `𝓛` at view path `hole` below `base ++ [h0]`.
    pub(crate) fn lshift(&mut self, o: Ori, base: &[Dir], hole: &[Dir]) -> Result<(), EngineError> {
        use Dir::*;
        use Law::*;
        let Some((d, rest)) = hole.split_first() else {
            self.fwd(o, base, &[H1, V1], IdUnit)?;
            return self.fwd(o, base, &[H1], VUnitR);
        };
        match d {
            H1 => {
                self.fwd(o, base, &[], HAssoc)?;
                self.lshift(o, &join(base, &o.path(&[H1])), rest)
            }
            V0 => {
                let inner = self.sub(o, base, &[H0, V0])?;
                let b = self.sub(o, base, &[H1, V0])?;
                let k = vright(o, &inner).len() - vleft(o, &b).len();
                self.idcomp(o, base, &[H1, V1], k)?;
                self.fwd(o, base, &[H1], VAssoc)?;
                self.bwd(o, base, &[], Interchange)?;
                self.lshift(o, &join(base, &o.path(&[V0])), rest)?;
                self.fwd(o, base, &[V1], HUnitR)
            }
            H0 => {
                self.fwd(o, base, &[], HAssoc)?;
                self.bwd(o, base, &[H1], Interchange)?;
                self.fwd(o, base, &[H1, V0], HUnitL)?;
                self.fwd(o, base, &[H1, V1], HUnitR)?;
                self.bwd(o, base, &[H1, V0], HUnitR)?;
                self.bwd(o, base, &[H1, V1], HUnitL)?;
                self.fwd(o, base, &[H1], Interchange)?;
                self.bwd(o, base, &[], HAssoc)?;
                self.lshift(o, &join(base, &o.path(&[H0])), rest)
            }
            _ => Err(EngineError::Internal(format!("bad hole step {}", d.as_str()))),
        }
    }
}

/// The vertical boundary on the view's right.
pub(crate) fn vright(o: Ori, t: &Term) -> &crate::protocol::ProtocolWord {
    match o {
        Ori::Id => &t.ty().right,
        Ori::Mir => &t.ty().left,
    }
}

/// The vertical boundary on the view's left.
pub(crate) fn vleft(o: Ori, t: &Term) -> &crate::protocol::ProtocolWord {
    match o {
        Ori::Id => &t.ty().left,
        Ori::Mir => &t.ty().right,
    }
}
