//! Popped forms: the shape recognizer and the normalizer that reaches one.

use crate::base::{BaseMor, ObjectWord};
use crate::context::{subst, Context, Side};
use crate::protocol::ProtocolWord;
use crate::term::{Corner, Dir, Law, Node, Path, Term};

use super::rw::{join, Ori, Rw};
use super::{EngineError, Trace};

use Dir::*;
use Law::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ShapeKind {
    Base,
    IdWhisker,
    UR,
    UL,
    LR,
    LL,
    Proj,
    Inj,
    ProdCtx,
    SumCtx,
}

impl ShapeKind {
    pub fn mirror(self) -> ShapeKind {
        use ShapeKind::*;
        match self {
            UR => UL,
            UL => UR,
            LR => LL,
            LL => LR,
            Proj => Inj,
            Inj => Proj,
            ProdCtx => SumCtx,
            SumCtx => ProdCtx,
            k => k,
        }
    }

    pub fn name(self) -> &'static str {
        use ShapeKind::*;
        match self {
            Base => "base",
            IdWhisker => "id-whisker",
            UR => "upper-right",
            UL => "upper-left",
            LR => "lower-right",
            LL => "lower-left",
            Proj => "projection",
            Inj => "injection",
            ProdCtx => "product-context",
            SumCtx => "sum-context",
        }
    }

    /// The orientation in which this shape reads as one of the six
    /// left-facing shapes, and that shape.
    pub(crate) fn view(self) -> (Ori, ShapeKind) {
        use ShapeKind::*;
        match self {
            UL | LL | Inj | SumCtx => (Ori::Mir, self.mirror()),
            _ => (Ori::Id, self),
        }
    }
}

/// A term in popped form, split into its components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PoppedForm {
    /// `⌜f⌝`
    Base { f: BaseMor },
    /// `(⌜f⌝ · id_P) · a` with `P` atomic
    IdWhisker { f: BaseMor, p: ProtocolWord, rest: Term },
    /// `(A⌝ | 1_B) · a`
    UR { a: ObjectWord, b: ObjectWord, rest: Term },
    /// `(1_B | A⌜) · a`
    UL { a: ObjectWord, b: ObjectWord, rest: Term },
    /// `(⌜f⌝ · (A⌟ | 1_B)) · a`
    LR { f: BaseMor, a: ObjectWord, b: ObjectWord, rest: Term },
    /// `(⌜f⌝ · (1_B | A⌞)) · a`
    LL { f: BaseMor, a: ObjectWord, b: ObjectWord, rest: Term },
    /// `(πᵢ · id_W) | a`
    Proj { i: u8, u0: ProtocolWord, u1: ProtocolWord, w: ProtocolWord, rest: Term },
    /// `a | (ᴨᵢ · id_W)`
    Inj { i: u8, u0: ProtocolWord, u1: ProtocolWord, w: ProtocolWord, rest: Term },
    /// `⌜f⌝ · 𝓛[a × b]`; `hole` is the path from the whole term to `a × b`.
    ProdCtx { f: BaseMor, ctx: Context, hole: Path, left: Term, right: Term },
    /// `⌜f⌝ · 𝓡[a + b]`
    SumCtx { f: BaseMor, ctx: Context, hole: Path, left: Term, right: Term },
}

impl PoppedForm {
    pub fn kind(&self) -> ShapeKind {
        match self {
            PoppedForm::Base { .. } => ShapeKind::Base,
            PoppedForm::IdWhisker { .. } => ShapeKind::IdWhisker,
            PoppedForm::UR { .. } => ShapeKind::UR,
            PoppedForm::UL { .. } => ShapeKind::UL,
            PoppedForm::LR { .. } => ShapeKind::LR,
            PoppedForm::LL { .. } => ShapeKind::LL,
            PoppedForm::Proj { .. } => ShapeKind::Proj,
            PoppedForm::Inj { .. } => ShapeKind::Inj,
            PoppedForm::ProdCtx { .. } => ShapeKind::ProdCtx,
            PoppedForm::SumCtx { .. } => ShapeKind::SumCtx,
        }
    }

    /// Path to the context hole, for the two context shapes.
    pub fn hole(&self) -> Option<&Path> {
        match self {
            PoppedForm::ProdCtx { hole, .. } | PoppedForm::SumCtx { hole, .. } => Some(hole),
            _ => None,
        }
    }

    /// Rebuild the term described by this form.
    pub fn reassemble(&self) -> Result<Term, EngineError> {
        let t = match self {
            PoppedForm::Base { f } => Term::base(f.clone()),
            PoppedForm::IdWhisker { f, p, rest } => Term::vcomp(Term::vcomp(Term::base(f.clone()), Term::hid(p.clone()))?, rest.clone())?,
            PoppedForm::UR { a, b, rest } => {
                Term::vcomp(Term::hcomp(Term::corner(Corner::UR, a.clone()), Term::vid(b.clone()))?, rest.clone())?
            }
            PoppedForm::UL { a, b, rest } => {
                Term::vcomp(Term::hcomp(Term::vid(b.clone()), Term::corner(Corner::UL, a.clone()))?, rest.clone())?
            }
            PoppedForm::LR { f, a, b, rest } => {
                let c = Term::hcomp(Term::corner(Corner::LR, a.clone()), Term::vid(b.clone()))?;
                Term::vcomp(Term::vcomp(Term::base(f.clone()), c)?, rest.clone())?
            }
            PoppedForm::LL { f, a, b, rest } => {
                let c = Term::hcomp(Term::vid(b.clone()), Term::corner(Corner::LL, a.clone()))?;
                Term::vcomp(Term::vcomp(Term::base(f.clone()), c)?, rest.clone())?
            }
            PoppedForm::Proj { i, u0, u1, w, rest } => {
                let p = Term::vcomp(Term::proj(*i, u0.clone(), u1.clone())?, Term::hid(w.clone()))?;
                Term::hcomp(p, rest.clone())?
            }
            PoppedForm::Inj { i, u0, u1, w, rest } => {
                let p = Term::vcomp(Term::inj(*i, u0.clone(), u1.clone())?, Term::hid(w.clone()))?;
                Term::hcomp(rest.clone(), p)?
            }
            PoppedForm::ProdCtx { f, ctx, left, right, .. } => {
                Term::vcomp(Term::base(f.clone()), subst(ctx, &Term::prod(left.clone(), right.clone())?)?)?
            }
            PoppedForm::SumCtx { f, ctx, left, right, .. } => {
                Term::vcomp(Term::base(f.clone()), subst(ctx, &Term::sum(left.clone(), right.clone())?)?)?
            }
        };
        Ok(t)
    }
}

/// Recognize a popped form. When a term has two readings the left-facing one
/// is reported.
pub fn is_popped(t: &Term) -> Option<PoppedForm> {
    match t.node() {
        Node::Base(f) => Some(PoppedForm::Base { f: f.clone() }),
        Node::VComp(x, rest) => {
            let rest = rest.clone();
            match x.node() {
                Node::VComp(g, h) => {
                    let f = g.as_base()?.clone();
                    match h.node() {
                        Node::HId(p) if p.is_atomic() => Some(PoppedForm::IdWhisker { f, p: p.clone(), rest }),
                        Node::HComp(c, v) => match (c.node(), v.node()) {
                            (Node::Corner(Corner::LR, a), Node::VId(b)) => Some(PoppedForm::LR { f, a: a.clone(), b: b.clone(), rest }),
                            (Node::VId(b), Node::Corner(Corner::LL, a)) => Some(PoppedForm::LL { f, a: a.clone(), b: b.clone(), rest }),
                            _ => None,
                        },
                        _ => None,
                    }
                }
                Node::HComp(c, v) => match (c.node(), v.node()) {
                    (Node::Corner(Corner::UR, a), Node::VId(b)) => Some(PoppedForm::UR { a: a.clone(), b: b.clone(), rest }),
                    (Node::VId(b), Node::Corner(Corner::UL, a)) => Some(PoppedForm::UL { a: a.clone(), b: b.clone(), rest }),
                    _ => None,
                },
                Node::Base(f) => ctx_form(f, &rest, Side::Left).or_else(|| ctx_form(f, &rest, Side::Right)),
                _ => None,
            }
        }
        Node::HComp(x, y) => {
            if let Node::VComp(p, w) = x.node() {
                if let (Node::Proj(i, u0, u1), Node::HId(w)) = (p.node(), w.node()) {
                    return Some(PoppedForm::Proj { i: *i, u0: u0.clone(), u1: u1.clone(), w: w.clone(), rest: y.clone() });
                }
            }
            if let Node::VComp(p, w) = y.node() {
                if let (Node::Inj(i, u0, u1), Node::HId(w)) = (p.node(), w.node()) {
                    return Some(PoppedForm::Inj { i: *i, u0: u0.clone(), u1: u1.clone(), w: w.clone(), rest: x.clone() });
                }
            }
            None
        }
        _ => None,
    }
}

fn ctx_form(f: &BaseMor, rest: &Term, side: Side) -> Option<PoppedForm> {
    let rel = find_hole(rest, side, &mut Vec::new(), &mut Vec::new())?;
    let ctx = Context::from_path(rest, &rel, side)?;
    let (l, r) = rest.at(&rel)?.children()?;
    let (left, right) = (l.clone(), r.clone());
    let mut hole = vec![V1];
    hole.extend(rel);
    Some(match side {
        Side::Left => PoppedForm::ProdCtx { f: f.clone(), ctx, hole, left, right },
        Side::Right => PoppedForm::SumCtx { f: f.clone(), ctx, hole, left, right },
    })
}

/// Depth-first search for a product (left side) or sum (right side) in
/// context position. `pending` holds the whisker boundaries of diamond frames
/// crossed so far, which must all equal the hole's facing boundary.
fn find_hole(t: &Term, side: Side, path: &mut Path, pending: &mut Vec<ProtocolWord>) -> Option<Path> {
    let o = match side {
        Side::Left => Ori::Id,
        Side::Right => Ori::Mir,
    };
    match (side, t.node()) {
        (Side::Left, Node::Prod(..)) | (Side::Right, Node::Sum(..)) => {
            let facing = match side {
                Side::Left => &t.ty().right,
                Side::Right => &t.ty().left,
            };
            if pending.iter().all(|p| p == facing) {
                return Some(path.clone());
            }
            None
        }
        (_, Node::VComp(x, _)) => {
            path.push(V0);
            let r = find_hole(x, side, path, pending);
            path.pop();
            r
        }
        (_, Node::HComp(..)) => {
            let near = t.child(o.dir(H1)).expect("horizontal composite");
            let far = t.child(o.dir(H0)).expect("horizontal composite");
            path.push(o.dir(H1));
            let r = find_hole(near, side, path, pending);
            path.pop();
            if r.is_some() {
                return r;
            }
            if let Node::VComp(id, _) = near.node() {
                if let Node::HId(p) = id.node() {
                    pending.push(p.clone());
                    path.push(o.dir(H0));
                    let r = find_hole(far, side, path, pending);
                    path.pop();
                    pending.pop();
                    return r;
                }
            }
            None
        }
        _ => None,
    }
}

/// Reduce `a` to popped form.
pub fn pop(a: &Term) -> Result<(Term, PoppedForm, Trace), EngineError> {
    let mut rw = Rw::new(a.clone());
    let form = pop_in(&mut rw, &[])?;
    let t = rw.term.clone();
    Ok((t, form, rw.into_trace()))
}

/// Pop the subterm at `path` of the rewriter's term.
pub(crate) fn pop_in(rw: &mut Rw, path: &[Dir]) -> Result<PoppedForm, EngineError> {
    let t = rw.get(path)?;
    let limit = 64 + 4 * (t.special() as usize + 1) * (t.size() + 1);
    Popper { rw, limit }.pop(path, 0)
}

struct Popper<'a> {
    rw: &'a mut Rw,
    limit: usize,
}

impl Popper<'_> {
    fn pop(&mut self, p: &[Dir], depth: usize) -> Result<PoppedForm, EngineError> {
        if depth > self.limit {
            return Err(EngineError::Internal(format!("pop recursion deeper than {}", self.limit)));
        }
        let t = self.rw.get(p)?;
        let rw = &mut *self.rw;
        let id = Ori::Id;
        match t.node() {
            Node::Base(_) => {}
            Node::VId(_) => rw.fwd(id, p, &[], IdFun)?,
            Node::HId(u) if u.is_unit() => {
                rw.fwd(id, p, &[], IdUnit)?;
                rw.fwd(id, p, &[], IdFun)?;
            }
            Node::HId(u) => {
                if u.is_atomic() {
                    rw.bwd(id, p, &[], VUnitR)?;
                } else {
                    rw.idcomp(id, p, &[], 1)?;
                }
                rw.bwd(id, p, &[V0], VUnitL)?;
                rw.fwd(id, p, &[V0, V0], IdFun)?;
            }
            Node::Corner(k, _) => {
                let (o, k) = match k {
                    Corner::UR | Corner::LR => (Ori::Id, *k),
                    _ => (Ori::Mir, k.mirror()),
                };
                if k == Corner::UR {
                    rw.bwd(o, p, &[], VUnitR)?;
                    rw.bwd(o, p, &[V0], HUnitR)?;
                    rw.fwd(o, p, &[V0, H1], IdUnit)?;
                } else {
                    rw.bwd(o, p, &[], HUnitR)?;
                    rw.fwd(o, p, &[H1], IdUnit)?;
                    rw.bwd(o, p, &[], VUnitL)?;
                    rw.fwd(o, p, &[V0], IdFun)?;
                    rw.bwd(o, p, &[], VUnitR)?;
                }
            }
            Node::Proj(..) | Node::Inj(..) => {
                let o = if matches!(t.node(), Node::Proj(..)) { Ori::Id } else { Ori::Mir };
                rw.bwd(o, p, &[], HUnitR)?;
                rw.bwd(o, p, &[H0], VUnitR)?;
                rw.bwd(o, p, &[H0, V1], IdUnit)?;
            }
            Node::Prod(..) | Node::Sum(..) => {
                rw.bwd(id, p, &[], VUnitL)?;
                rw.fwd(id, p, &[V0], IdFun)?;
            }
            Node::VComp(..) => self.vcomp(p, depth)?,
            Node::HComp(..) => return self.hcomp(p, depth),
        }
        self.classify(p)
    }

    fn classify(&self, p: &[Dir]) -> Result<PoppedForm, EngineError> {
        let t = self.rw.get(p)?;
        is_popped(&t).ok_or_else(|| EngineError::Internal(format!("not in popped form: {t}")))
    }

    fn vcomp(&mut self, p: &[Dir], depth: usize) -> Result<(), EngineError> {
        let s0 = self.pop(&join(p, &[V0]), depth + 1)?;
        if s0.kind() == ShapeKind::Base {
            let s1 = self.pop(&join(p, &[V1]), depth + 1)?;
            let (o, k) = s1.kind().view();
            let rw = &mut *self.rw;
            match k {
                ShapeKind::Base => rw.fwd(o, p, &[], VFun)?,
                ShapeKind::IdWhisker | ShapeKind::LR => {
                    rw.fwd(o, p, &[], VAssoc)?;
                    rw.fwd(o, p, &[V0], VAssoc)?;
                    rw.fwd(o, p, &[V0, V0], VFun)?;
                }
                ShapeKind::UR => {
                    rw.fwd(o, p, &[], VAssoc)?;
                    rw.bwd(o, p, &[V0, V0], HUnitL)?;
                    rw.fwd(o, p, &[V0], Interchange)?;
                    rw.fwd(o, p, &[V0, H0, V0], IdUnit)?;
                    rw.fwd(o, p, &[V0, H0], VUnitL)?;
                    rw.fwd(o, p, &[V0, H1], VUnitR)?;
                    rw.bwd(o, p, &[V0, H0], VUnitR)?;
                    rw.bwd(o, p, &[V0, H1], VUnitL)?;
                    rw.bwd(o, p, &[V0], Interchange)?;
                    rw.bwd(o, p, &[], VAssoc)?;
                }
                ShapeKind::Proj => {
                    rw.bwd(o, p, &[V0], HUnitL)?;
                    rw.fwd(o, p, &[], Interchange)?;
                    rw.fwd(o, p, &[H0, V0], IdUnit)?;
                    rw.fwd(o, p, &[H0], VUnitL)?;
                }
                ShapeKind::ProdCtx => {
                    rw.fwd(o, p, &[], VAssoc)?;
                    rw.fwd(o, p, &[V0], VFun)?;
                }
                _ => return Err(EngineError::Internal("unexpected view shape".into())),
            }
        } else {
            let (o, k) = s0.kind().view();
            let rw = &mut *self.rw;
            match k {
                ShapeKind::IdWhisker | ShapeKind::UR | ShapeKind::LR | ShapeKind::ProdCtx => rw.bwd(o, p, &[], VAssoc)?,
                ShapeKind::Proj => {
                    rw.bwd(o, p, &[V1], HUnitL)?;
                    rw.fwd(o, p, &[], Interchange)?;
                    rw.bwd(o, p, &[H0], VAssoc)?;
                    rw.fwd(o, p, &[H0, V1], IdComp)?;
                }
                _ => return Err(EngineError::Internal("unexpected view shape".into())),
            }
        }
        Ok(())
    }

    fn hcomp(&mut self, p: &[Dir], depth: usize) -> Result<PoppedForm, EngineError> {
        use ShapeKind as K;
        let s0 = self.pop(&join(p, &[H0]), depth + 1)?;
        let s1 = self.pop(&join(p, &[H1]), depth + 1)?;
        if s0.kind() == K::Base && s1.kind() == K::Base {
            self.rw.fwd(Ori::Id, p, &[], HFun)?;
            return self.classify(p);
        }
        let views = [(Ori::Id, s0.kind(), s1.kind(), &s0), (Ori::Mir, s1.kind().mirror(), s0.kind().mirror(), &s1)];
        if let Some(&(o, k0, _, _)) = views.iter().find(|v| matches!(v.1, K::UR | K::LR | K::Proj | K::SumCtx)) {
            self.absorb(o, p, k0)?;
            return self.classify(p);
        }
        let whisker = |k: K| matches!(k, K::IdWhisker | K::UR | K::LR | K::SumCtx | K::Proj);
        if let Some(&(o, _, k1, _)) = views.iter().find(|v| v.1 == K::IdWhisker && whisker(v.2)) {
            self.whisker(o, p, k1)?;
            return self.classify(p);
        }
        if let Some(&(o, _, _, _)) = views.iter().find(|v| v.1 == K::UL && v.2 == K::LR) {
            self.yank(o, p)?;
            return self.pop(p, depth + 1);
        }
        if let Some(&(o, _, _, left)) = views.iter().find(|v| v.1 == K::ProdCtx && v.2 == K::Proj) {
            let hole = o.path(left.hole().expect("context shape"));
            self.project(o, p, &hole[1..])?;
            return self.pop(p, depth + 1);
        }
        Err(EngineError::Internal(format!("no popped-form case for {} | {}", s0.kind().name(), s1.kind().name())))
    }

    /// A left-facing shape on the left absorbs the right component.
    fn absorb(&mut self, o: Ori, p: &[Dir], k: ShapeKind) -> Result<(), EngineError> {
        let rw = &mut *self.rw;
        match k {
            ShapeKind::UR => {
                rw.bwd(o, p, &[H1], VUnitL)?;
                rw.bwd(o, p, &[], Interchange)?;
                rw.fwd(o, p, &[V0], HAssoc)?;
                rw.fuse(o, p, &[V0, H1])?;
                rw.bwd(o, p, &[V0, H1], IdFun)?;
            }
            ShapeKind::LR => {
                rw.bwd(o, p, &[H1], VUnitL)?;
                rw.bwd(o, p, &[], Interchange)?;
                rw.bwd(o, p, &[V0, H1], VUnitL)?;
                rw.bwd(o, p, &[V0], Interchange)?;
                rw.fwd(o, p, &[V0, V1], HAssoc)?;
                rw.fuse(o, p, &[V0, V1, H1])?;
                rw.bwd(o, p, &[V0, V1, H1], IdFun)?;
                rw.fuse(o, p, &[V0, V0])?;
            }
            ShapeKind::Proj => rw.fwd(o, p, &[], HAssoc)?,
            ShapeKind::SumCtx => {
                rw.bwd(o, p, &[H1], VUnitL)?;
                rw.bwd(o, p, &[], Interchange)?;
                rw.fuse(o, p, &[V0])?;
            }
            _ => return Err(EngineError::Internal("unexpected absorbing shape".into())),
        }
        Ok(())
    }

    /// `(⌜f⌝ · id_P) · a` on the left of the shape `k`.
    fn whisker(&mut self, o: Ori, p: &[Dir], k: ShapeKind) -> Result<(), EngineError> {
        let rw = &mut *self.rw;
        match k {
            ShapeKind::IdWhisker | ShapeKind::LR => {
                rw.bwd(o, p, &[], Interchange)?;
                rw.bwd(o, p, &[V0], Interchange)?;
                rw.fwd(o, p, &[V0, V0], HFun)?;
                rw.fwd(o, p, &[V0, V1], HUnitL)?;
            }
            ShapeKind::UR => {
                rw.bwd(o, p, &[], Interchange)?;
                rw.bwd(o, p, &[V0], HAssoc)?;
                let q = join(p, &o.path(&[V0, H0]));
                rw.bwd(o, &q, &[H1], VUnitL)?;
                rw.bwd(o, &q, &[], Interchange)?;
                rw.fwd(o, &q, &[V1], HUnitL)?;
                rw.fuse(o, &q, &[V0])?;
                self.corner_slide(o, &q)?;
                let rw = &mut *self.rw;
                rw.bwd(o, p, &[V0, H1], VUnitL)?;
                rw.bwd(o, p, &[V0], Interchange)?;
                rw.fwd(o, p, &[V0, V0], HAssoc)?;
                rw.fuse(o, p, &[V0, V0, H1])?;
                rw.bwd(o, p, &[V0, V0, H1], IdFun)?;
                rw.fuse(o, p, &[V0, V1])?;
                rw.bwd(o, p, &[], VAssoc)?;
            }
            ShapeKind::SumCtx => {
                rw.bwd(o, p, &[H0], VAssoc)?;
                rw.bwd(o, p, &[], Interchange)?;
                rw.fwd(o, p, &[V0], HFun)?;
            }
            ShapeKind::Proj => {
                rw.bwd(o, p, &[], HAssoc)?;
                let q = join(p, &o.path(&[H0]));
                rw.bwd(o, &q, &[H0], VAssoc)?;
                rw.bwd(o, &q, &[H1], VUnitL)?;
                rw.bwd(o, &q, &[], Interchange)?;
                rw.bwd(o, &q, &[V1], Interchange)?;
                rw.fwd(o, &q, &[V1, V0], HUnitL)?;
                rw.fwd(o, &q, &[V1, V1], HUnitR)?;
                rw.bwd(o, &q, &[V1, V0], HUnitR)?;
                rw.bwd(o, &q, &[V1, V1], HUnitL)?;
                rw.fwd(o, &q, &[V1], Interchange)?;
                rw.fuse(o, &q, &[V0])?;
                rw.bwd(o, &q, &[V0], HUnitL)?;
                rw.fwd(o, &q, &[], Interchange)?;
                rw.fwd(o, &q, &[H0, V0], IdUnit)?;
                rw.fwd(o, &q, &[H0], VUnitL)?;
                rw.fwd(o, &q, &[H1], VAssoc)?;
                rw.fwd(o, p, &[], HAssoc)?;
            }
            _ => return Err(EngineError::Internal("unexpected whisker partner".into())),
        }
        Ok(())
    }

    /// `⌜f⌝ · A⌝ ≗ (A⌝ | 1_X) · (1_A | ⌜f⌝)` for `f : X → I`, at `q`.
    fn corner_slide(&mut self, o: Ori, q: &[Dir]) -> Result<(), EngineError> {
        let rw = &mut *self.rw;
        rw.bwd(o, q, &[V0], HUnitL)?;
        rw.bwd(o, q, &[V1], HUnitR)?;
        rw.fwd(o, q, &[], Interchange)?;
        rw.fwd(o, q, &[H0, V0], IdUnit)?;
        rw.fwd(o, q, &[H0], VUnitL)?;
        rw.fwd(o, q, &[H1, V1], IdUnit)?;
        rw.fwd(o, q, &[H1], VUnitR)?;
        rw.bwd(o, q, &[H0], VUnitR)?;
        rw.bwd(o, q, &[H1], VUnitL)?;
        rw.bwd(o, q, &[], Interchange)
    }

    /// `((1_B | A⌜) · b) | ((⌜g⌝ · (A⌟ | 1_C)) · c)` exposes a yank.
    fn yank(&mut self, o: Ori, p: &[Dir]) -> Result<(), EngineError> {
        let rw = &mut *self.rw;
        rw.bwd(o, p, &[], Interchange)?;
        rw.fwd(o, p, &[V0], HAssoc)?;
        rw.bwd(o, p, &[V0, H1, H0], VUnitL)?;
        rw.bwd(o, p, &[V0, H1], Interchange)?;
        rw.bwd(o, p, &[V0, H0], VUnitL)?;
        rw.bwd(o, p, &[V0], Interchange)?;
        rw.bwd(o, p, &[V0, V1, H1], HAssoc)?;
        rw.beta(o, p, &[V0, V1, H1, H0])?;
        rw.fuse(o, p, &[V0, V1])?;
        rw.bwd(o, p, &[V0, V1], IdFun)?;
        rw.fwd(o, p, &[V0], VUnitR)?;
        rw.fuse(o, p, &[V0])
    }

    /// `(⌜f⌝ · 𝓛[a × b]) | ((πᵢ · id_W) | c)` exposes a projection redex.
    /// `hole` is the view path from `𝓛[a × b]` to the product.
    fn project(&mut self, o: Ori, p: &[Dir], hole: &[Dir]) -> Result<(), EngineError> {
        let rw = &mut *self.rw;
        rw.bwd(o, p, &[], HAssoc)?;
        rw.bwd(o, p, &[H0, H1], VUnitL)?;
        rw.bwd(o, p, &[H0], Interchange)?;
        rw.fuse(o, p, &[H0, V0])?;
        let base = join(p, &o.path(&[H0, V1]));
        rw.lshift(o, &base, hole)?;
        rw.beta(o, &base, hole)
    }
}
