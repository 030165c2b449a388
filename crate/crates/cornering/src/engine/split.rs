//! Splitting closed cells along their open boundary, and the helper that
//! pulls a context apart around its hole.

use crate::context::{subst, Context, Side};
use crate::term::{Dir, Law, Path, Term};

use super::pop::{pop_in, ShapeKind};
use super::rw::{join, vleft, vright, Ori, Rw};
use super::{EngineError, Trace};

use Dir::*;
use Law::*;

/// For `a : ⟨I|A→B|U·V⟩` with `|U| = k`, reduce `a` to `a₀ · a₁` with
/// `a₀ : ⟨I|A→C|U⟩` and `a₁ : ⟨I|C→B|V⟩`. A right-closed `a` is split along
/// its left boundary instead.
pub fn split_base(a: &Term, k: usize) -> Result<(Term, Term, Trace), EngineError> {
    let o = if a.ty().is_left_closed() {
        Ori::Id
    } else if a.ty().is_right_closed() {
        Ori::Mir
    } else {
        return Err(EngineError::NotClosed);
    };
    if k > vright(o, a).len() {
        return Err(EngineError::Internal(format!("split point {k} beyond boundary of length {}", vright(o, a).len())));
    }
    let mut rw = Rw::new(a.clone());
    split_at(&mut rw, o, &[], k)?;
    let (a0, a1) = match rw.term.children() {
        Some((x, y)) => (x.clone(), y.clone()),
        None => return Err(EngineError::Internal("split did not produce a composite".into())),
    };
    Ok((a0, a1, rw.into_trace()))
}

/// Split the view-left-closed term at real path `p` after `k` atoms of its
/// view-right boundary.
pub(crate) fn split_at(rw: &mut Rw, o: Ori, p: &[Dir], k: usize) -> Result<(), EngineError> {
    if k == 0 {
        return rw.bwd(o, p, &[], VUnitL);
    }
    let form = pop_in(rw, p)?;
    let kind = match o {
        Ori::Id => form.kind(),
        Ori::Mir => form.kind().mirror(),
    };
    match kind {
        ShapeKind::LL | ShapeKind::UL => {
            split_at(rw, o, &join(p, &[V1]), k - 1)?;
            rw.fwd(o, p, &[], VAssoc)
        }
        ShapeKind::Inj => {
            rw.idcomp(o, p, &[H1, V1], k - 1)?;
            let inj = rw.sub(o, p, &[H1, V0])?;
            let ui = vleft(o, &inj).len();
            split_at(rw, o, &join(p, &o.path(&[H0])), ui + k - 1)?;
            rw.fwd(o, p, &[H1], VAssoc)?;
            rw.bwd(o, p, &[], Interchange)?;
            rw.fwd(o, p, &[V1], HUnitR)
        }
        ShapeKind::ProdCtx => {
            let hole: Path = o.path(form.hole().expect("context shape"));
            rw.bwd(o, p, &[V1], HUnitL)?;
            decompose_at(rw, o, &join(p, &[V1]), &hole[1..])?;
            split_at(rw, o, &join(p, &[V1, V1]), k - 1)?;
            rw.fwd(o, p, &[V1], VAssoc)?;
            rw.fwd(o, p, &[], VAssoc)
        }
        k => Err(EngineError::Internal(format!("closed cell popped to {}", k.name()))),
    }
}

/// For the term `b | 𝓛[c]` at `p`, with `hole` the view path from `𝓛[c]` to
/// `c`, reduce to `(λ₀ | c) · λ₁`.
pub(crate) fn decompose_at(rw: &mut Rw, o: Ori, p: &[Dir], hole: &[Dir]) -> Result<(), EngineError> {
    let Some((d, rest)) = hole.split_first() else {
        return rw.bwd(o, p, &[], VUnitR);
    };
    match d {
        H1 => {
            rw.bwd(o, p, &[], HAssoc)?;
            decompose_at(rw, o, p, rest)
        }
        V0 => {
            let inner = rw.sub(o, p, &[H1, V0])?;
            split_at(rw, o, &join(p, &o.path(&[H0])), vleft(o, &inner).len())?;
            rw.bwd(o, p, &[], Interchange)?;
            decompose_at(rw, o, &join(p, &[V0]), rest)?;
            rw.bwd(o, p, &[], VAssoc)
        }
        H0 => {
            rw.bwd(o, p, &[], HAssoc)?;
            decompose_at(rw, o, &join(p, &o.path(&[H0])), rest)?;
            rw.bwd(o, p, &[], Interchange)?;
            rw.fwd(o, p, &[V0], HUnitR)
        }
        _ => Err(EngineError::Internal(format!("bad hole step {}", d.as_str()))),
    }
}

/// For a left-closed `b` and a left context `𝓛` (or the mirrored data),
/// reduce `b | 𝓛[c]` to `(λ₀ | c) · λ₁` and return `λ₀`, `λ₁` and the trace.
pub fn context_decompose(l: &Context, b: &Term, c: &Term) -> Result<(Term, Term, Trace), EngineError> {
    let lc = subst(l, c)?;
    let (start, o) = match l.side {
        Side::Left => (Term::hcomp(b.clone(), lc)?, Ori::Id),
        Side::Right => (Term::hcomp(lc, b.clone())?, Ori::Mir),
    };
    let mut rw = Rw::new(start);
    decompose_at(&mut rw, o, &[], &o.path(&l.hole_path()))?;
    let (top, l1) = rw.term.children().map(|(x, y)| (x.clone(), y.clone())).ok_or_else(|| EngineError::Internal("no composite".into()))?;
    let l0 = top.child(o.dir(H0)).cloned().ok_or_else(|| EngineError::Internal("no horizontal composite".into()))?;
    Ok((l0, l1, rw.into_trace()))
}
