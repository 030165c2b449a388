//! Terms of the cornering, their typing, and the special-term measure.

mod eta;
mod laws;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

use crate::base::{BaseMor, ObjectWord};
use crate::protocol::ProtocolWord;

pub use eta::{eta_corner_instances, eta_instances, EtaLaw};
pub use laws::{
    apply_law, backward_all, backward_unique, check_law, enumerate_struct_steps, eq_struct_bounded, forward, fuse_maximal, fuse_steps,
    idcomp_split, EqResult, EquationInstance, Law, Orientation, StructStep, ALL_LAWS,
};

/// `⟨left | top → bottom | right⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CellType {
    pub left: ProtocolWord,
    pub top: ObjectWord,
    pub bottom: ObjectWord,
    pub right: ProtocolWord,
}

impl CellType {
    pub fn is_vertical(&self) -> bool {
        self.left.is_unit() && self.right.is_unit()
    }

    pub fn is_left_closed(&self) -> bool {
        self.left.is_unit()
    }

    pub fn is_right_closed(&self) -> bool {
        self.right.is_unit()
    }
}

impl fmt::Display for CellType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} | {} -> {} | {}>", self.left, self.top, self.bottom, self.right)
    }
}

/// The four corner cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Corner {
    /// `A⌝ : ⟨A∘ | I → A | I⟩`
    UR,
    /// `A⌞ : ⟨I | A → I | A∘⟩`
    LL,
    /// `A⌜ : ⟨I | I → A | A•⟩`
    UL,
    /// `A⌟ : ⟨A• | A → I | I⟩`
    LR,
}

impl Corner {
    /// The corner obtained by reflecting a cell left to right.
    pub fn mirror(self) -> Corner {
        match self {
            Corner::UR => Corner::UL,
            Corner::UL => Corner::UR,
            Corner::LL => Corner::LR,
            Corner::LR => Corner::LL,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Base(BaseMor),
    VId(ObjectWord),
    HId(ProtocolWord),
    VComp(Term, Term),
    HComp(Term, Term),
    Corner(Corner, ObjectWord),
    Inj(u8, ProtocolWord, ProtocolWord),
    Proj(u8, ProtocolWord, ProtocolWord),
    Sum(Term, Term),
    Prod(Term, Term),
}

struct TermInner {
    node: Node,
    ty: CellType,
    special: u64,
    size: usize,
    hash: u64,
}

/// A well-typed term. The type is computed and checked at construction.
#[derive(Clone)]
pub struct Term(Arc<TermInner>);

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TypeError {
    #[error("{rule}: expected {expected}, found {found}")]
    Mismatch { rule: &'static str, expected: String, found: String },
    #[error("invalid position {0}")]
    InvalidPosition(String),
    #[error("index {0} out of range")]
    BadIndex(u8),
}

fn mismatch<T: fmt::Display>(rule: &'static str, expected: &T, found: &T) -> TypeError {
    TypeError::Mismatch { rule, expected: expected.to_string(), found: found.to_string() }
}

/// A child position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    V0,
    V1,
    H0,
    H1,
    S0,
    S1,
}

impl Dir {
    pub fn as_str(self) -> &'static str {
        match self {
            Dir::V0 => "v0",
            Dir::V1 => "v1",
            Dir::H0 => "h0",
            Dir::H1 => "h1",
            Dir::S0 => "s0",
            Dir::S1 => "s1",
        }
    }

    pub fn parse(s: &str) -> Option<Dir> {
        Some(match s {
            "v0" => Dir::V0,
            "v1" => Dir::V1,
            "h0" => Dir::H0,
            "h1" => Dir::H1,
            "s0" => Dir::S0,
            "s1" => Dir::S1,
            _ => return None,
        })
    }

    pub fn mirror(self) -> Dir {
        match self {
            Dir::H0 => Dir::H1,
            Dir::H1 => Dir::H0,
            d => d,
        }
    }
}

pub type Path = Vec<Dir>;

pub fn path_to_string(p: &[Dir]) -> String {
    if p.is_empty() {
        return "root".to_string();
    }
    p.iter().map(|d| d.as_str()).collect::<Vec<_>>().join(".")
}

pub fn parse_path(s: &str) -> Option<Path> {
    if s == "root" {
        return Some(Vec::new());
    }
    s.split('.').map(Dir::parse).collect()
}

fn hash_node(node: &Node) -> u64 {
    let mut h = std::collections::hash_map::DefaultHasher::new();
    std::mem::discriminant(node).hash(&mut h);
    match node {
        Node::Base(f) => f.hash(&mut h),
        Node::VId(a) => a.hash(&mut h),
        Node::HId(u) => u.hash(&mut h),
        Node::Corner(k, a) => {
            k.hash(&mut h);
            a.hash(&mut h)
        }
        Node::Inj(i, u, w) | Node::Proj(i, u, w) => {
            i.hash(&mut h);
            u.hash(&mut h);
            w.hash(&mut h)
        }
        Node::VComp(a, b) | Node::HComp(a, b) | Node::Sum(a, b) | Node::Prod(a, b) => {
            a.0.hash.hash(&mut h);
            b.0.hash.hash(&mut h)
        }
    }
    h.finish()
}

impl Term {
    fn mk(node: Node, ty: CellType) -> Term {
        let (special, size) = match &node {
            Node::Base(_) | Node::VId(_) | Node::HId(_) => (0, 1),
            Node::Corner(..) | Node::Inj(..) | Node::Proj(..) => (1, 1),
            Node::VComp(a, b) | Node::HComp(a, b) => (a.special() + b.special(), 1 + a.size() + b.size()),
            Node::Sum(a, b) | Node::Prod(a, b) => (1 + a.special() + b.special(), 1 + a.size() + b.size()),
        };
        let hash = hash_node(&node);
        Term(Arc::new(TermInner { node, ty, special, size, hash }))
    }

    pub fn base(f: BaseMor) -> Term {
        let ty = CellType { left: ProtocolWord::unit(), top: f.dom().clone(), bottom: f.cod().clone(), right: ProtocolWord::unit() };
        Term::mk(Node::Base(f), ty)
    }

    pub fn vid(a: ObjectWord) -> Term {
        let ty = CellType { left: ProtocolWord::unit(), top: a.clone(), bottom: a.clone(), right: ProtocolWord::unit() };
        Term::mk(Node::VId(a), ty)
    }

    pub fn hid(u: ProtocolWord) -> Term {
        let ty = CellType { left: u.clone(), top: ObjectWord::unit(), bottom: ObjectWord::unit(), right: u.clone() };
        Term::mk(Node::HId(u), ty)
    }

    pub fn vcomp(a: Term, b: Term) -> Result<Term, TypeError> {
        if a.ty().bottom != b.ty().top {
            return Err(mismatch("vertical composition", &a.ty().bottom, &b.ty().top));
        }
        let ty = CellType {
            left: a.ty().left.concat(&b.ty().left),
            top: a.ty().top.clone(),
            bottom: b.ty().bottom.clone(),
            right: a.ty().right.concat(&b.ty().right),
        };
        Ok(Term::mk(Node::VComp(a, b), ty))
    }

    pub fn hcomp(a: Term, b: Term) -> Result<Term, TypeError> {
        if a.ty().right != b.ty().left {
            return Err(mismatch("horizontal composition", &a.ty().right, &b.ty().left));
        }
        let ty = CellType {
            left: a.ty().left.clone(),
            top: a.ty().top.concat(&b.ty().top),
            bottom: a.ty().bottom.concat(&b.ty().bottom),
            right: b.ty().right.clone(),
        };
        Ok(Term::mk(Node::HComp(a, b), ty))
    }

    pub fn corner(k: Corner, a: ObjectWord) -> Term {
        let i = ObjectWord::unit;
        let u = ProtocolWord::unit;
        let ty = match k {
            Corner::UR => CellType { left: ProtocolWord::send(a.clone()), top: i(), bottom: a.clone(), right: u() },
            Corner::LL => CellType { left: u(), top: a.clone(), bottom: i(), right: ProtocolWord::send(a.clone()) },
            Corner::UL => CellType { left: u(), top: i(), bottom: a.clone(), right: ProtocolWord::recv(a.clone()) },
            Corner::LR => CellType { left: ProtocolWord::recv(a.clone()), top: a.clone(), bottom: i(), right: u() },
        };
        Term::mk(Node::Corner(k, a), ty)
    }

    pub fn inj(i: u8, u: ProtocolWord, w: ProtocolWord) -> Result<Term, TypeError> {
        let left = match i {
            0 => u.clone(),
            1 => w.clone(),
            _ => return Err(TypeError::BadIndex(i)),
        };
        let ty = CellType { left, top: ObjectWord::unit(), bottom: ObjectWord::unit(), right: ProtocolWord::plus(u.clone(), w.clone()) };
        Ok(Term::mk(Node::Inj(i, u, w), ty))
    }

    pub fn proj(i: u8, u: ProtocolWord, w: ProtocolWord) -> Result<Term, TypeError> {
        let right = match i {
            0 => u.clone(),
            1 => w.clone(),
            _ => return Err(TypeError::BadIndex(i)),
        };
        let ty = CellType { left: ProtocolWord::times(u.clone(), w.clone()), top: ObjectWord::unit(), bottom: ObjectWord::unit(), right };
        Ok(Term::mk(Node::Proj(i, u, w), ty))
    }

    pub fn sum(a: Term, b: Term) -> Result<Term, TypeError> {
        let (ta, tb) = (a.ty(), b.ty());
        if ta.top != tb.top {
            return Err(mismatch("sum", &ta.top, &tb.top));
        }
        if ta.bottom != tb.bottom {
            return Err(mismatch("sum", &ta.bottom, &tb.bottom));
        }
        if ta.right != tb.right {
            return Err(mismatch("sum", &ta.right, &tb.right));
        }
        let ty = CellType {
            left: ProtocolWord::plus(ta.left.clone(), tb.left.clone()),
            top: ta.top.clone(),
            bottom: ta.bottom.clone(),
            right: ta.right.clone(),
        };
        Ok(Term::mk(Node::Sum(a, b), ty))
    }

    pub fn prod(a: Term, b: Term) -> Result<Term, TypeError> {
        let (ta, tb) = (a.ty(), b.ty());
        if ta.top != tb.top {
            return Err(mismatch("product", &ta.top, &tb.top));
        }
        if ta.bottom != tb.bottom {
            return Err(mismatch("product", &ta.bottom, &tb.bottom));
        }
        if ta.left != tb.left {
            return Err(mismatch("product", &ta.left, &tb.left));
        }
        let ty = CellType {
            left: ta.left.clone(),
            top: ta.top.clone(),
            bottom: ta.bottom.clone(),
            right: ProtocolWord::times(ta.right.clone(), tb.right.clone()),
        };
        Ok(Term::mk(Node::Prod(a, b), ty))
    }

    /// Rebuild a node from parts, re-checking its type.
    pub fn from_node(node: Node) -> Result<Term, TypeError> {
        Ok(match node {
            Node::Base(f) => Term::base(f),
            Node::VId(a) => Term::vid(a),
            Node::HId(u) => Term::hid(u),
            Node::VComp(a, b) => Term::vcomp(a, b)?,
            Node::HComp(a, b) => Term::hcomp(a, b)?,
            Node::Corner(k, a) => Term::corner(k, a),
            Node::Inj(i, u, w) => Term::inj(i, u, w)?,
            Node::Proj(i, u, w) => Term::proj(i, u, w)?,
            Node::Sum(a, b) => Term::sum(a, b)?,
            Node::Prod(a, b) => Term::prod(a, b)?,
        })
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    pub fn ty(&self) -> &CellType {
        &self.0.ty
    }

    /// `#a`: the number of special subterms.
    pub fn special(&self) -> u64 {
        self.0.special
    }

    /// Number of constructor nodes.
    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn leaf_count(&self) -> usize {
        match self.node() {
            Node::VComp(a, b) | Node::HComp(a, b) | Node::Sum(a, b) | Node::Prod(a, b) => a.leaf_count() + b.leaf_count(),
            _ => 1,
        }
    }

    pub fn digest_hash(&self) -> u64 {
        self.0.hash
    }

    pub fn children(&self) -> Option<(&Term, &Term)> {
        match self.node() {
            Node::VComp(a, b) | Node::HComp(a, b) | Node::Sum(a, b) | Node::Prod(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn child(&self, d: Dir) -> Option<&Term> {
        match (self.node(), d) {
            (Node::VComp(a, _), Dir::V0) | (Node::HComp(a, _), Dir::H0) => Some(a),
            (Node::VComp(_, b), Dir::V1) | (Node::HComp(_, b), Dir::H1) => Some(b),
            (Node::Sum(a, _) | Node::Prod(a, _), Dir::S0) => Some(a),
            (Node::Sum(_, b) | Node::Prod(_, b), Dir::S1) => Some(b),
            _ => None,
        }
    }

    pub fn at(&self, path: &[Dir]) -> Option<&Term> {
        let mut t = self;
        for d in path {
            t = t.child(*d)?;
        }
        Some(t)
    }

    fn with_child(&self, d: Dir, c: Term) -> Result<Term, TypeError> {
        let node = match (self.node(), d) {
            (Node::VComp(_, b), Dir::V0) => Node::VComp(c, b.clone()),
            (Node::VComp(a, _), Dir::V1) => Node::VComp(a.clone(), c),
            (Node::HComp(_, b), Dir::H0) => Node::HComp(c, b.clone()),
            (Node::HComp(a, _), Dir::H1) => Node::HComp(a.clone(), c),
            (Node::Sum(_, b), Dir::S0) => Node::Sum(c, b.clone()),
            (Node::Sum(a, _), Dir::S1) => Node::Sum(a.clone(), c),
            (Node::Prod(_, b), Dir::S0) => Node::Prod(c, b.clone()),
            (Node::Prod(a, _), Dir::S1) => Node::Prod(a.clone(), c),
            _ => return Err(TypeError::InvalidPosition(d.as_str().to_string())),
        };
        Term::from_node(node)
    }

    /// Replace the subterm at `path`, re-checking types along the spine.
    pub fn replace(&self, path: &[Dir], new: Term) -> Result<Term, TypeError> {
        match path.split_first() {
            None => Ok(new),
            Some((d, rest)) => {
                let c = self.child(*d).ok_or_else(|| TypeError::InvalidPosition(path_to_string(path)))?;
                let c2 = c.replace(rest, new)?;
                self.with_child(*d, c2)
            }
        }
    }

    /// Every subterm with its path, in preorder.
    pub fn positions(&self) -> Vec<(Path, Term)> {
        let mut out = Vec::new();
        let mut stack = vec![(Vec::new(), self.clone())];
        while let Some((p, t)) = stack.pop() {
            let kids: Vec<(Dir, Term)> = match t.node() {
                Node::VComp(a, b) => vec![(Dir::V0, a.clone()), (Dir::V1, b.clone())],
                Node::HComp(a, b) => vec![(Dir::H0, a.clone()), (Dir::H1, b.clone())],
                Node::Sum(a, b) | Node::Prod(a, b) => vec![(Dir::S0, a.clone()), (Dir::S1, b.clone())],
                _ => vec![],
            };
            for (d, c) in kids.into_iter().rev() {
                let mut q = p.clone();
                q.push(d);
                stack.push((q, c));
            }
            out.push((p, t));
        }
        out
    }

    pub fn as_base(&self) -> Option<&BaseMor> {
        match self.node() {
            Node::Base(f) => Some(f),
            _ => None,
        }
    }

    pub fn is_vid(&self) -> bool {
        matches!(self.node(), Node::VId(_))
    }

    pub fn is_hid(&self) -> bool {
        matches!(self.node(), Node::HId(_))
    }
}

/// `#a`.
pub fn count_special(a: &Term) -> u64 {
    a.special()
}

impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.hash == other.0.hash && self.0.size == other.0.size && self.0.node == other.0.node)
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash)
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::dsl::print_term(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::dsl::print_term(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> ObjectWord {
        ObjectWord::atom("A")
    }

    #[test]
    fn corner_types() {
        let t = Term::corner(Corner::UR, a());
        assert_eq!(t.ty().left, ProtocolWord::send(a()));
        assert_eq!(t.ty().top, ObjectWord::unit());
        assert_eq!(t.ty().bottom, a());
        assert!(t.ty().right.is_unit());
        let t = Term::corner(Corner::LR, a());
        assert_eq!(t.ty().left, ProtocolWord::recv(a()));
        assert_eq!(t.ty().top, a());
    }

    #[test]
    fn yank_typechecks_as_identity() {
        let t = Term::hcomp(Term::corner(Corner::LL, a()), Term::corner(Corner::UR, a())).unwrap();
        assert_eq!(t.ty(), Term::vid(a()).ty());
        assert_eq!(t.special(), 2);
        let bad = Term::hcomp(Term::corner(Corner::LL, a()), Term::corner(Corner::LL, a()));
        assert!(bad.is_err());
    }

    #[test]
    fn measure_clauses() {
        let p = Term::prod(Term::vid(a()), Term::vid(a())).unwrap();
        assert_eq!(p.special(), 1);
        let s = Term::sum(Term::corner(Corner::UR, a()), Term::corner(Corner::UR, a())).unwrap();
        assert_eq!(s.special(), 3);
        assert_eq!(Term::hid(ProtocolWord::unit()).special(), 0);
    }

    #[test]
    fn replace_rechecks() {
        let t = Term::vcomp(Term::vid(a()), Term::vid(a())).unwrap();
        let b = ObjectWord::atom("B");
        assert!(t.replace(&[Dir::V0], Term::vid(b)).is_err());
        let u = t.replace(&[Dir::V1], Term::vid(a())).unwrap();
        assert_eq!(u, t);
        assert_eq!(path_to_string(&[Dir::V0, Dir::H1]), "v0.h1");
        assert_eq!(parse_path("v0.h1"), Some(vec![Dir::V0, Dir::H1]));
        assert_eq!(parse_path("root"), Some(vec![]));
    }
}
