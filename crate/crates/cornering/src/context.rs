//! Left and right contexts: terms with one hole at the top right (left
//! contexts) or top left (right contexts) corner.

use crate::base::ObjectWord;
use crate::engine::{EngineError, Ori, Rw, Trace};
use crate::protocol::ProtocolWord;
use crate::term::{Dir, Node, Path, Term, TypeError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// One layer of a context. For a left context `Par(a)` is `a | 𝓛`,
/// `Seq(a)` is `𝓛 · a` and `Diamond(a)` is `𝓛 ⋄ a`; right contexts use the
/// mirrored readings `𝓡 | a`, `𝓡 · a` and `a ⋄ 𝓡`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Frame {
    Par(Term),
    Seq(Term),
    Diamond(Term),
}

impl Frame {
    pub fn term(&self) -> &Term {
        match self {
            Frame::Par(a) | Frame::Seq(a) | Frame::Diamond(a) => a,
        }
    }
}

/// A context as a list of frames, outermost first. `hole` records the
/// vertical boundary facing away from the hole side and the bottom object of
/// the hole.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Context {
    pub side: Side,
    pub hole: (ProtocolWord, ObjectWord),
    pub frames: Vec<Frame>,
}

pub type LeftContext = Context;
pub type RightContext = Context;

impl Context {
    pub fn hole_l(u: ProtocolWord, b: ObjectWord) -> Context {
        Context { side: Side::Left, hole: (u, b), frames: Vec::new() }
    }

    pub fn hole_r(u: ProtocolWord, b: ObjectWord) -> Context {
        Context { side: Side::Right, hole: (u, b), frames: Vec::new() }
    }

    /// Add a frame on the outside.
    pub fn wrap(mut self, f: Frame) -> Context {
        self.frames.insert(0, f);
        self
    }

    /// Path from the root of `self[b]` to the hole.
    pub fn hole_path(&self) -> Path {
        self.frames
            .iter()
            .map(|f| match (self.side, f) {
                (_, Frame::Seq(_)) => Dir::V0,
                (Side::Left, Frame::Par(_)) | (Side::Right, Frame::Diamond(_)) => Dir::H1,
                (Side::Left, Frame::Diamond(_)) | (Side::Right, Frame::Par(_)) => Dir::H0,
            })
            .collect()
    }

    /// Read off the context around the subterm of `t` at `hole`.
    pub fn from_path(t: &Term, hole: &[Dir], side: Side) -> Option<Context> {
        let mut frames = Vec::new();
        let mut cur = t.clone();
        for d in hole {
            let (a, b) = match cur.node() {
                Node::VComp(a, b) | Node::HComp(a, b) => (a.clone(), b.clone()),
                _ => return None,
            };
            let vertical = matches!(cur.node(), Node::VComp(..));
            let (frame, next) = match (side, vertical, d) {
                (_, true, Dir::V0) => (Frame::Seq(b), a),
                (Side::Left, false, Dir::H1) => (Frame::Par(a), b),
                (Side::Right, false, Dir::H0) => (Frame::Par(b), a),
                (Side::Left, false, Dir::H0) => (Frame::Diamond(strip_id(&b)?), a),
                (Side::Right, false, Dir::H1) => (Frame::Diamond(strip_id(&a)?), b),
                _ => return None,
            };
            frames.push(frame);
            cur = next;
        }
        let ty = cur.ty();
        let u = match side {
            Side::Left => ty.left.clone(),
            Side::Right => ty.right.clone(),
        };
        Some(Context { side, hole: (u, ty.bottom.clone()), frames })
    }
}

fn strip_id(t: &Term) -> Option<Term> {
    match t.node() {
        Node::VComp(x, a) if x.is_hid() => Some(a.clone()),
        _ => None,
    }
}

fn check_hole(ctx: &Context, b: &Term) -> Result<(), TypeError> {
    let ty = b.ty();
    let facing = match ctx.side {
        Side::Left => &ty.left,
        Side::Right => &ty.right,
    };
    if *facing != ctx.hole.0 {
        return Err(TypeError::Mismatch { rule: "context hole", expected: ctx.hole.0.to_string(), found: facing.to_string() });
    }
    if ty.bottom != ctx.hole.1 {
        return Err(TypeError::Mismatch { rule: "context hole", expected: ctx.hole.1.to_string(), found: ty.bottom.to_string() });
    }
    Ok(())
}

/// `𝓛[b]`.
pub fn lctx_subst(l: &Context, b: &Term) -> Result<Term, TypeError> {
    debug_assert_eq!(l.side, Side::Left);
    check_hole(l, b)?;
    let p = b.ty().right.clone();
    let mut cur = b.clone();
    for f in l.frames.iter().rev() {
        cur = match f {
            Frame::Par(a) => Term::hcomp(a.clone(), cur)?,
            Frame::Seq(a) => Term::vcomp(cur, a.clone())?,
            Frame::Diamond(a) => Term::hcomp(cur, Term::vcomp(Term::hid(p.clone()), a.clone())?)?,
        };
    }
    Ok(cur)
}

/// `𝓡[b]`.
pub fn rctx_subst(r: &Context, b: &Term) -> Result<Term, TypeError> {
    debug_assert_eq!(r.side, Side::Right);
    check_hole(r, b)?;
    let p = b.ty().left.clone();
    let mut cur = b.clone();
    for f in r.frames.iter().rev() {
        cur = match f {
            Frame::Par(a) => Term::hcomp(cur, a.clone())?,
            Frame::Seq(a) => Term::vcomp(cur, a.clone())?,
            Frame::Diamond(a) => Term::hcomp(Term::vcomp(Term::hid(p.clone()), a.clone())?, cur)?,
        };
    }
    Ok(cur)
}

/// Substitute on the context's own side.
pub fn subst(c: &Context, b: &Term) -> Result<Term, TypeError> {
    match c.side {
        Side::Left => lctx_subst(c, b),
        Side::Right => rctx_subst(c, b),
    }
}

/// `#𝓛`.
pub fn ctx_special_count(c: &Context) -> u64 {
    c.frames.iter().map(|f| f.term().special()).sum()
}

/// Given `𝓛`, `a` and `b`, return `𝓛[a | b]` with the trace of basic
/// equations that takes `𝓛[a] | (b · id_W)` to it. For a right context the
/// mirrored statement is used: `(b · id_W) | 𝓡[a]` becomes `𝓡[b | a]`.
pub fn lshift(l: &Context, a: &Term, b: &Term) -> Result<(Term, Trace), EngineError> {
    let la = subst(l, a)?;
    let w = match l.side {
        Side::Left => la.ty().right.suffix(a.ty().right.len()),
        Side::Right => la.ty().left.suffix(a.ty().left.len()),
    };
    let bw = Term::vcomp(b.clone(), Term::hid(w))?;
    let (start, ori) = match l.side {
        Side::Left => (Term::hcomp(la, bw)?, Ori::Id),
        Side::Right => (Term::hcomp(bw, la)?, Ori::Mir),
    };
    let mut rw = Rw::new(start);
    let hole = ori.path(&l.hole_path());
    rw.lshift(ori, &[], &hole)?;
    let end = rw.term.clone();
    Ok((end, rw.into_trace()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Corner;

    fn ob(s: &str) -> ObjectWord {
        ObjectWord::atom(s)
    }

    #[test]
    fn substitution_clauses() {
        let a = ob("A");
        let b = Term::corner(Corner::LL, a.clone());
        let hole = Context::hole_l(ProtocolWord::unit(), ObjectWord::unit());
        assert_eq!(lctx_subst(&hole, &b).unwrap(), b);
        let c = Term::vid(ob("C"));
        let par = hole.clone().wrap(Frame::Par(c.clone()));
        assert_eq!(lctx_subst(&par, &b).unwrap(), Term::hcomp(c.clone(), b.clone()).unwrap());
        let d = Term::corner(Corner::LL, ob("D"));
        let dia = hole.wrap(Frame::Diamond(d.clone()));
        // `d` has left boundary I, so the diamond needs W = I; the instance is ill-typed.
        assert!(Term::vcomp(Term::hid(b.ty().right.clone()), d.clone()).is_err());
        assert!(lctx_subst(&dia, &b).is_err());
    }

    #[test]
    fn measure_of_contexts() {
        let hole = Context::hole_l(ProtocolWord::unit(), ObjectWord::unit());
        assert_eq!(ctx_special_count(&hole), 0);
        let one = hole.wrap(Frame::Par(Term::corner(Corner::UR, ob("A"))));
        assert_eq!(ctx_special_count(&one), 1);
    }

    #[test]
    fn hole_path_round_trip() {
        let a = ob("A");
        let hole = Context::hole_l(ProtocolWord::unit(), a.clone());
        let l = hole.wrap(Frame::Seq(Term::vid(a.clone()))).wrap(Frame::Par(Term::vid(ob("C"))));
        let b = Term::vid(a.clone());
        let t = lctx_subst(&l, &b).unwrap();
        let p = l.hole_path();
        assert_eq!(t.at(&p).unwrap(), &b);
        let back = Context::from_path(&t, &p, Side::Left).unwrap();
        assert_eq!(back, l);
    }
}
