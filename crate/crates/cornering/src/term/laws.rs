//! The basic equations as oriented schemas, their instance checker, one-step
//! enumeration, and a bounded search for structural equality.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::base::{canonicalize, mor_comp, mor_id, mor_tensor, BaseMor, ObjectWord, Slice};

use super::{Dir, Node, Path, Term};

/// A basic equation, read left to right as printed (unit laws read as
/// removing the unit).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Law {
    /// `⌜f⌝·⌜g⌝ = ⌜f;g⌝`
    VFun,
    /// `⌜f⌝|⌜g⌝ = ⌜f⊗g⌝`
    HFun,
    /// `1_A = ⌜1_A⌝`
    IdFun,
    /// `1_A·a = a`
    VUnitL,
    /// `a·1_B = a`
    VUnitR,
    /// `id_U|a = a`
    HUnitL,
    /// `a|id_W = a`
    HUnitR,
    /// `a·(b·c) = (a·b)·c`
    VAssoc,
    /// `(a|b)|c = a|(b|c)`
    HAssoc,
    /// `id_I = 1_I`
    IdUnit,
    /// `id_U·id_W = id_{U·W}`
    IdComp,
    /// `(a|b)·(c|d) = (a·c)|(b·d)`
    Interchange,
}

pub const ALL_LAWS: [Law; 12] = [
    Law::VFun,
    Law::HFun,
    Law::IdFun,
    Law::VUnitL,
    Law::VUnitR,
    Law::HUnitL,
    Law::HUnitR,
    Law::VAssoc,
    Law::HAssoc,
    Law::IdUnit,
    Law::IdComp,
    Law::Interchange,
];

impl Law {
    pub fn name(self) -> &'static str {
        match self {
            Law::VFun => "vfun",
            Law::HFun => "hfun",
            Law::IdFun => "idfun",
            Law::VUnitL => "vunitl",
            Law::VUnitR => "vunitr",
            Law::HUnitL => "hunitl",
            Law::HUnitR => "hunitr",
            Law::VAssoc => "vassoc",
            Law::HAssoc => "hassoc",
            Law::IdUnit => "idunit",
            Law::IdComp => "idcomp",
            Law::Interchange => "interchange",
        }
    }

    pub fn parse(s: &str) -> Option<Law> {
        ALL_LAWS.iter().copied().find(|l| l.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Forward,
    Backward,
}

impl Orientation {
    pub fn flip(self) -> Orientation {
        match self {
            Orientation::Forward => Orientation::Backward,
            Orientation::Backward => Orientation::Forward,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Orientation::Forward => "fwd",
            Orientation::Backward => "bwd",
        }
    }
}

/// `lhs` and `rhs` are an instance of a schema; `orientation` records which
/// side the rewrite started from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationInstance {
    pub law: String,
    pub lhs: Term,
    pub rhs: Term,
    pub orientation: Orientation,
}

/// One application of a basic equation at a position. `before` and `after`
/// are the subterms at `path`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructStep {
    pub law: Law,
    pub orientation: Orientation,
    pub path: Path,
    pub before: Term,
    pub after: Term,
}

impl StructStep {
    pub fn reversed(&self) -> StructStep {
        StructStep {
            law: self.law,
            orientation: self.orientation.flip(),
            path: self.path.clone(),
            before: self.after.clone(),
            after: self.before.clone(),
        }
    }

    pub fn under(mut self, prefix: &[Dir]) -> StructStep {
        let mut p = prefix.to_vec();
        p.extend(self.path);
        self.path = p;
        self
    }
}

/// The forward image of `t` under `law`, when `t` matches the left side.
pub fn forward(law: Law, t: &Term) -> Option<Term> {
    match (law, t.node()) {
        (Law::VFun, Node::VComp(a, b)) => {
            let (f, g) = (a.as_base()?, b.as_base()?);
            Some(Term::base(mor_comp(f, g).ok()?))
        }
        (Law::HFun, Node::HComp(a, b)) => {
            let (f, g) = (a.as_base()?, b.as_base()?);
            Some(Term::base(mor_tensor(f, g)))
        }
        (Law::IdFun, Node::VId(a)) => Some(Term::base(mor_id(a))),
        (Law::VUnitL, Node::VComp(a, b)) if a.is_vid() => Some(b.clone()),
        (Law::VUnitR, Node::VComp(a, b)) if b.is_vid() => Some(a.clone()),
        (Law::HUnitL, Node::HComp(a, b)) if a.is_hid() => Some(b.clone()),
        (Law::HUnitR, Node::HComp(a, b)) if b.is_hid() => Some(a.clone()),
        (Law::VAssoc, Node::VComp(a, bc)) => match bc.node() {
            Node::VComp(b, c) => Term::vcomp(Term::vcomp(a.clone(), b.clone()).ok()?, c.clone()).ok(),
            _ => None,
        },
        (Law::HAssoc, Node::HComp(ab, c)) => match ab.node() {
            Node::HComp(a, b) => Term::hcomp(a.clone(), Term::hcomp(b.clone(), c.clone()).ok()?).ok(),
            _ => None,
        },
        (Law::IdUnit, Node::HId(u)) if u.is_unit() => Some(Term::vid(ObjectWord::unit())),
        (Law::IdComp, Node::VComp(a, b)) => match (a.node(), b.node()) {
            (Node::HId(u), Node::HId(w)) => Some(Term::hid(u.concat(w))),
            _ => None,
        },
        (Law::Interchange, Node::VComp(ab, cd)) => match (ab.node(), cd.node()) {
            (Node::HComp(a, b), Node::HComp(c, d)) => {
                Term::hcomp(Term::vcomp(a.clone(), c.clone()).ok()?, Term::vcomp(b.clone(), d.clone()).ok()?).ok()
            }
            _ => None,
        },
        _ => None,
    }
}

/// Backward images of `t` whose choice is determined by `t` alone.
pub fn backward_unique(law: Law, t: &Term) -> Option<Term> {
    let ty = t.ty();
    match law {
        Law::VUnitL => Term::vcomp(Term::vid(ty.top.clone()), t.clone()).ok(),
        Law::VUnitR => Term::vcomp(t.clone(), Term::vid(ty.bottom.clone())).ok(),
        Law::HUnitL => Term::hcomp(Term::hid(ty.left.clone()), t.clone()).ok(),
        Law::HUnitR => Term::hcomp(t.clone(), Term::hid(ty.right.clone())).ok(),
        Law::IdFun => match t.node() {
            Node::Base(f) if f.is_identity() => Some(Term::vid(f.dom().clone())),
            _ => None,
        },
        Law::IdUnit => match t.node() {
            Node::VId(a) if a.is_unit() => Some(Term::hid(crate::protocol::ProtocolWord::unit())),
            _ => None,
        },
        Law::VAssoc => match t.node() {
            Node::VComp(ab, c) => match ab.node() {
                Node::VComp(a, b) => Term::vcomp(a.clone(), Term::vcomp(b.clone(), c.clone()).ok()?).ok(),
                _ => None,
            },
            _ => None,
        },
        Law::HAssoc => match t.node() {
            Node::HComp(a, bc) => match bc.node() {
                Node::HComp(b, c) => Term::hcomp(Term::hcomp(a.clone(), b.clone()).ok()?, c.clone()).ok(),
                _ => None,
            },
            _ => None,
        },
        Law::Interchange => match t.node() {
            Node::HComp(ac, bd) => match (ac.node(), bd.node()) {
                (Node::VComp(a, c), Node::VComp(b, d)) => {
                    Term::vcomp(Term::hcomp(a.clone(), b.clone()).ok()?, Term::hcomp(c.clone(), d.clone()).ok()?).ok()
                }
                _ => None,
            },
            _ => None,
        },
        Law::VFun | Law::HFun | Law::IdComp => None,
    }
}

/// `id_{U·W}` split after `k` atoms.
pub fn idcomp_split(t: &Term, k: usize) -> Option<Term> {
    match t.node() {
        Node::HId(u) if k <= u.len() => Term::vcomp(Term::hid(u.prefix(k)), Term::hid(u.suffix(k))).ok(),
        _ => None,
    }
}

/// All backward images of `t` under `law`. Factorizations of a base
/// morphism are taken along prefixes of its stored slice order, and tensor
/// splits assign boundary-touching units to the left factor.
pub fn backward_all(law: Law, t: &Term) -> Vec<Term> {
    match law {
        Law::IdComp => match t.node() {
            Node::HId(u) => (0..=u.len()).filter_map(|k| idcomp_split(t, k)).collect(),
            _ => vec![],
        },
        Law::VFun => match t.node() {
            Node::Base(h) => vfun_splits(h).into_iter().filter_map(|(f, g)| Term::vcomp(Term::base(f), Term::base(g)).ok()).collect(),
            _ => vec![],
        },
        Law::HFun => match t.node() {
            Node::Base(h) => hfun_splits(h).into_iter().filter_map(|(f, g)| Term::hcomp(Term::base(f), Term::base(g)).ok()).collect(),
            _ => vec![],
        },
        _ => backward_unique(law, t).into_iter().collect(),
    }
}

fn vfun_splits(h: &BaseMor) -> Vec<(BaseMor, BaseMor)> {
    let s = h.slices();
    let mut out = Vec::new();
    for k in 0..=s.len() {
        let mid = if k == 0 { h.dom().clone() } else { s[k - 1].cod() };
        let f = canonicalize(s[..k].to_vec(), h.dom().clone());
        let g = canonicalize(s[k..].to_vec(), mid);
        if let (Ok(f), Ok(g)) = (f, g) {
            out.push((f, g));
        }
    }
    out
}

fn hfun_splits(h: &BaseMor) -> Vec<(BaseMor, BaseMor)> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    'split: for p in 0..=h.dom().len() {
        let mut b = p;
        let mut fs = Vec::new();
        let mut gs = Vec::new();
        for s in h.slices() {
            let (l, d, c) = (s.left.len(), s.gen.dom.len(), s.gen.cod.len());
            let w = s.left.len() + d + s.right.len();
            if l + d <= b {
                let keep = s.right.len() - (w - b);
                fs.push(Slice { left: s.left.clone(), gen: s.gen.clone(), right: s.right.sub(0, keep) });
                b = b + c - d;
            } else if l >= b {
                gs.push(Slice { left: s.left.sub(b, l), gen: s.gen.clone(), right: s.right.clone() });
            } else {
                continue 'split;
            }
        }
        let f = canonicalize(fs, h.dom().sub(0, p));
        let g = canonicalize(gs, h.dom().sub(p, h.dom().len()));
        if let (Ok(f), Ok(g)) = (f, g) {
            if seen.insert((f.clone(), g.clone())) {
                out.push((f, g));
            }
        }
    }
    out
}

/// Whether `rhs` is the forward image of `lhs` under `law`.
pub fn check_law(law: Law, lhs: &Term, rhs: &Term) -> bool {
    forward(law, lhs).is_some_and(|r| r == *rhs)
}

/// Apply `law` in the given orientation where the result is determined.
pub fn apply_law(law: Law, orientation: Orientation, t: &Term) -> Option<Term> {
    match orientation {
        Orientation::Forward => forward(law, t),
        Orientation::Backward => backward_unique(law, t),
    }
}

/// All single-position, single-schema applications to `a`.
pub fn enumerate_struct_steps(a: &Term) -> Vec<StructStep> {
    let mut out = Vec::new();
    for (path, t) in a.positions() {
        for law in ALL_LAWS {
            if let Some(r) = forward(law, &t) {
                out.push(StructStep { law, orientation: Orientation::Forward, path: path.clone(), before: t.clone(), after: r });
            }
            for r in backward_all(law, &t) {
                out.push(StructStep { law, orientation: Orientation::Backward, path: path.clone(), before: t.clone(), after: r });
            }
        }
    }
    out
}

/// Steps turning a zero-special term with only unit horizontal identities
/// into a single base leaf, paths relative to `t`.
pub fn fuse_steps(t: &Term) -> Option<(Vec<StructStep>, BaseMor)> {
    let mut steps = Vec::new();
    let f = fuse_into(t, &mut Vec::new(), &mut steps)?;
    Some((steps, f))
}

fn push(steps: &mut Vec<StructStep>, law: Law, path: &[Dir], before: Term, after: Term) {
    steps.push(StructStep { law, orientation: Orientation::Forward, path: path.to_vec(), before, after });
}

fn fuse_into(t: &Term, path: &mut Vec<Dir>, steps: &mut Vec<StructStep>) -> Option<BaseMor> {
    match t.node() {
        Node::Base(f) => Some(f.clone()),
        Node::VId(a) => {
            let f = mor_id(a);
            push(steps, Law::IdFun, path, t.clone(), Term::base(f.clone()));
            Some(f)
        }
        Node::HId(u) if u.is_unit() => {
            let one = Term::vid(ObjectWord::unit());
            push(steps, Law::IdUnit, path, t.clone(), one.clone());
            let f = mor_id(&ObjectWord::unit());
            push(steps, Law::IdFun, path, one, Term::base(f.clone()));
            Some(f)
        }
        Node::VComp(a, b) | Node::HComp(a, b) => {
            let vertical = matches!(t.node(), Node::VComp(..));
            let (d0, d1) = if vertical { (Dir::V0, Dir::V1) } else { (Dir::H0, Dir::H1) };
            path.push(d0);
            let f = fuse_into(a, path, steps)?;
            path.pop();
            path.push(d1);
            let g = fuse_into(b, path, steps)?;
            path.pop();
            let (before, h, law) = if vertical {
                (Term::vcomp(Term::base(f.clone()), Term::base(g.clone())).ok()?, mor_comp(&f, &g).ok()?, Law::VFun)
            } else {
                (Term::hcomp(Term::base(f.clone()), Term::base(g.clone())).ok()?, mor_tensor(&f, &g), Law::HFun)
            };
            push(steps, law, path, before, Term::base(h.clone()));
            Some(h)
        }
        _ => None,
    }
}

/// Fuse every maximal fusable subterm; returns the steps (paths relative to
/// `t`) and the result.
pub fn fuse_maximal(t: &Term) -> (Vec<StructStep>, Term) {
    let mut steps = Vec::new();
    let r = fuse_max_into(t, &mut Vec::new(), &mut steps);
    (steps, r)
}

fn fuse_max_into(t: &Term, path: &mut Vec<Dir>, steps: &mut Vec<StructStep>) -> Term {
    if t.as_base().is_some() {
        return t.clone();
    }
    if let Some((s, f)) = fuse_steps(t) {
        steps.extend(s.into_iter().map(|s| s.under(path)));
        return Term::base(f);
    }
    let Some((a, b)) = t.children() else { return t.clone() };
    let (d0, d1) = match t.node() {
        Node::VComp(..) => (Dir::V0, Dir::V1),
        Node::HComp(..) => (Dir::H0, Dir::H1),
        _ => (Dir::S0, Dir::S1),
    };
    path.push(d0);
    let a2 = fuse_max_into(a, path, steps);
    path.pop();
    path.push(d1);
    let b2 = fuse_max_into(b, path, steps);
    path.pop();
    let node = match t.node() {
        Node::VComp(..) => Node::VComp(a2, b2),
        Node::HComp(..) => Node::HComp(a2, b2),
        Node::Sum(..) => Node::Sum(a2, b2),
        _ => Node::Prod(a2, b2),
    };
    Term::from_node(node).expect("fusion preserves types")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EqResult {
    Equal,
    Unknown,
}

const STATE_CAP: usize = 200_000;

/// Bounded search for a chain of basic equations between `a` and `b`.
///
/// Both sides are first fused maximally (those steps count towards `depth`),
/// then a bidirectional breadth-first search runs over
/// [`enumerate_struct_steps`], with intermediate terms limited to a few
/// nodes more than the larger input.
pub fn eq_struct_bounded(a: &Term, b: &Term, depth: usize) -> EqResult {
    if a.ty() != b.ty() {
        return EqResult::Unknown;
    }
    if a == b {
        return EqResult::Equal;
    }
    let (sa, a2) = fuse_maximal(a);
    let (sb, b2) = fuse_maximal(b);
    let used = sa.len() + sb.len();
    if used > depth {
        return EqResult::Unknown;
    }
    if a2 == b2 {
        return EqResult::Equal;
    }
    let cap = a2.size().max(b2.size()) + 6;
    let mut seen: [HashMap<Term, usize>; 2] = [HashMap::new(), HashMap::new()];
    let mut frontier: [VecDeque<Term>; 2] = [VecDeque::from([a2.clone()]), VecDeque::from([b2.clone()])];
    seen[0].insert(a2, 0);
    seen[1].insert(b2, 0);
    let mut remaining = depth - used;
    while remaining > 0 {
        for side in 0..2 {
            if remaining == 0 {
                break;
            }
            remaining -= 1;
            let mut next = VecDeque::new();
            while let Some(t) = frontier[side].pop_front() {
                let d = seen[side][&t];
                for s in enumerate_struct_steps(&t) {
                    let Ok(n) = t.replace(&s.path, s.after) else { continue };
                    if n.size() > cap || seen[side].contains_key(&n) {
                        continue;
                    }
                    if seen[1 - side].contains_key(&n) {
                        return EqResult::Equal;
                    }
                    seen[side].insert(n.clone(), d + 1);
                    next.push_back(n);
                }
                if seen[side].len() > STATE_CAP {
                    return EqResult::Unknown;
                }
            }
            frontier[side] = next;
        }
    }
    EqResult::Unknown
}
