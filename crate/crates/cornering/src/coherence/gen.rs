//! Type-directed random terms. Vertical boundaries are chosen first; object
//! boundaries are left free and, where two must agree, joined by a base
//! morphism found by search over the generators.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::base::{canonicalize, mor_comp, mor_id, BaseMor, ObjectWord, Signature, Slice};
use crate::protocol::{ProtocolAtom, ProtocolWord};
use crate::term::{CellType, Corner, Term};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("no term of the requested type found within the size budget")]
    Unsatisfiable,
}

/// Relative weights of the constructors.
#[derive(Clone, Debug)]
pub struct GenConfig {
    pub leaf: u32,
    pub vcomp: u32,
    pub hcomp: u32,
    pub choice: u32,
    /// Probability that a fresh interface protocol is the unit.
    pub unit_protocol: f64,
    /// Allow special terms at all.
    pub special: bool,
    /// Longest interface protocol drawn at random.
    pub max_protocol: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { leaf: 3, vcomp: 4, hcomp: 4, choice: 2, unit_protocol: 0.25, special: true, max_protocol: 2 }
    }
}

impl GenConfig {
    /// Only base leaves, identities and compositions with unit interfaces.
    pub fn zero_special() -> Self {
        GenConfig { special: false, unit_protocol: 1.0, ..GenConfig::default() }
    }
}

/// What the generated term must look like on its vertical boundaries.
#[derive(Clone, Debug)]
pub enum Target {
    Vertical,
    LeftClosed(ProtocolWord),
    RightClosed(ProtocolWord),
    Boundary(ProtocolWord, ProtocolWord),
    Exact(CellType),
}

pub struct TermGen<'a> {
    pub sig: &'a Signature,
    pub cfg: GenConfig,
    pub rng: ChaCha8Rng,
    bridges: HashMap<(ObjectWord, ObjectWord), Option<BaseMor>>,
}

/// Deterministic generation from a seed.
pub fn gen_term(seed: u64, size: usize, target: &Target, sig: &Signature) -> Result<Term, GenError> {
    TermGen::new(sig, GenConfig::default(), seed).term(size, target)
}

impl<'a> TermGen<'a> {
    pub fn new(sig: &'a Signature, cfg: GenConfig, seed: u64) -> TermGen<'a> {
        TermGen { sig, cfg, rng: ChaCha8Rng::seed_from_u64(seed), bridges: HashMap::new() }
    }

    /// A term of at most `size` nodes, retrying with smaller budgets.
    pub fn term(&mut self, size: usize, target: &Target) -> Result<Term, GenError> {
        let (l, r) = match target {
            Target::Vertical => (ProtocolWord::unit(), ProtocolWord::unit()),
            Target::LeftClosed(r) => (ProtocolWord::unit(), r.clone()),
            Target::RightClosed(l) => (l.clone(), ProtocolWord::unit()),
            Target::Boundary(l, r) => (l.clone(), r.clone()),
            Target::Exact(ty) => (ty.left.clone(), ty.right.clone()),
        };
        // Bridges and closers make terms overshoot their budget: the budget
        // shrinks after each rejection, and the largest of a few fitting
        // terms is kept.
        let mut budget = size as f64;
        let mut best: Option<Term> = None;
        let mut fitting = 0;
        for _ in 0..64 {
            let Some(mut t) = self.gen(&l, &r, budget as usize) else {
                budget = (budget * 0.93).max(1.0);
                continue;
            };
            if let Target::Exact(ty) = target {
                let Some(fixed) = self.fit(t, &ty.top, &ty.bottom) else { continue };
                t = fixed;
            }
            if t.size() > size {
                budget = (budget * 0.93).max(1.0);
                continue;
            }
            if best.as_ref().is_none_or(|b| t.size() > b.size()) {
                best = Some(t);
            }
            fitting += 1;
            if fitting == 4 {
                break;
            }
        }
        if let Some(t) = best {
            return Ok(t);
        }
        Err(GenError::Unsatisfiable)
    }

    /// A random interface protocol.
    pub fn protocol(&mut self, depth: usize) -> ProtocolWord {
        if !self.cfg.special || self.rng.gen_bool(self.cfg.unit_protocol) {
            return ProtocolWord::unit();
        }
        let n = self.rng.gen_range(1..=self.cfg.max_protocol.max(1));
        let atoms = (0..n).map(|_| self.atom(depth)).collect();
        ProtocolWord(atoms)
    }

    fn atom(&mut self, depth: usize) -> ProtocolAtom {
        let a = self.object();
        match self.rng.gen_range(0..if depth > 0 { 6 } else { 4 }) {
            0 | 1 => ProtocolAtom::Send(a),
            2 | 3 => ProtocolAtom::Recv(a),
            4 => ProtocolAtom::Plus(self.small(depth - 1), self.small(depth - 1)),
            _ => ProtocolAtom::Times(self.small(depth - 1), self.small(depth - 1)),
        }
    }

    fn small(&mut self, depth: usize) -> ProtocolWord {
        let n = self.rng.gen_range(0..=1);
        ProtocolWord((0..n).map(|_| self.atom(depth)).collect())
    }

    fn object(&mut self) -> ObjectWord {
        match self.sig.objects.choose(&mut self.rng) {
            Some(o) => ObjectWord(vec![o.clone()]),
            None => ObjectWord::unit(),
        }
    }

    fn base_leaf(&mut self) -> Term {
        if !self.sig.rules.is_empty() && self.rng.gen_bool(0.25) {
            let r = self.sig.rules.choose(&mut self.rng).expect("nonempty");
            return Term::base(r.lhs.clone());
        }
        match self.rng.gen_range(0..4) {
            0 => Term::vid(if self.rng.gen_bool(0.7) { self.object() } else { ObjectWord::unit() }),
            1 => Term::hid(ProtocolWord::unit()),
            _ => match self.sig.gens.choose(&mut self.rng) {
                Some(g) => Term::base(BaseMor::generator(g)),
                None => Term::vid(ObjectWord::unit()),
            },
        }
    }

    /// Leaves of exactly this boundary.
    fn leaves(&mut self, l: &ProtocolWord, r: &ProtocolWord) -> Vec<Term> {
        let mut out = Vec::new();
        if l.is_unit() && r.is_unit() {
            out.push(self.base_leaf());
        } else if l == r {
            out.push(Term::hid(l.clone()));
        }
        if !self.cfg.special {
            return out;
        }
        match (l.0.as_slice(), r.0.as_slice()) {
            ([ProtocolAtom::Send(a)], []) => out.push(Term::corner(Corner::UR, a.clone())),
            ([ProtocolAtom::Recv(a)], []) => out.push(Term::corner(Corner::LR, a.clone())),
            ([], [ProtocolAtom::Send(a)]) => out.push(Term::corner(Corner::LL, a.clone())),
            ([], [ProtocolAtom::Recv(a)]) => out.push(Term::corner(Corner::UL, a.clone())),
            _ => {}
        }
        if let [ProtocolAtom::Plus(u, w)] = r.0.as_slice() {
            for (i, x) in [u, w].into_iter().enumerate() {
                if x == l {
                    out.extend(Term::inj(i as u8, u.clone(), w.clone()));
                }
            }
        }
        if let [ProtocolAtom::Times(u, w)] = l.0.as_slice() {
            for (i, x) in [u, w].into_iter().enumerate() {
                if x == r {
                    out.extend(Term::proj(i as u8, u.clone(), w.clone()));
                }
            }
        }
        out
    }

    fn gen(&mut self, l: &ProtocolWord, r: &ProtocolWord, budget: usize) -> Option<Term> {
        let leaves = self.leaves(l, r);
        let c = &self.cfg;
        let choice_ok =
            c.special && (matches!(l.0.as_slice(), [ProtocolAtom::Plus(..)]) || matches!(r.0.as_slice(), [ProtocolAtom::Times(..)]));
        let weights = [
            if leaves.is_empty() {
                0
            } else if budget > 4 {
                c.leaf.min(1)
            } else {
                c.leaf
            },
            if budget >= 3 { c.vcomp } else { 0 },
            if budget >= 3 { c.hcomp } else { 0 },
            if budget >= 3 && choice_ok { c.choice } else { 0 },
        ];
        let total: u32 = weights.iter().sum();
        if total == 0 {
            return self.connect(l, r);
        }
        let mut pick = self.rng.gen_range(0..total);
        let mut k = 0;
        while pick >= weights[k] {
            pick -= weights[k];
            k += 1;
        }
        let rest = budget.saturating_sub(1);
        match k {
            0 => leaves.choose(&mut self.rng).cloned(),
            1 => {
                let (l0, l1) = self.cut(l);
                let (r0, r1) = self.cut(r);
                let b0 = self.rng.gen_range(1..rest.max(2));
                let a = self.gen(&l0, &r0, b0)?;
                let b = self.gen(&l1, &r1, rest.saturating_sub(b0).max(1))?;
                self.vjoin(a, b)
            }
            2 => {
                let m = self.protocol(1);
                let b0 = self.rng.gen_range(1..rest.max(2));
                let a = self.gen(l, &m, b0)?;
                let b = self.gen(&m, r, rest.saturating_sub(b0).max(1))?;
                Term::hcomp(a, b).ok()
            }
            _ => {
                let sum = matches!(l.0.as_slice(), [ProtocolAtom::Plus(..)])
                    && (!matches!(r.0.as_slice(), [ProtocolAtom::Times(..)]) || self.rng.gen_bool(0.5));
                let half = (rest / 2).max(1);
                if sum {
                    let [ProtocolAtom::Plus(u, w)] = l.0.as_slice() else { unreachable!() };
                    let (u, w) = (u.clone(), w.clone());
                    let a = self.gen(&u, r, half)?;
                    let b = self.gen(&w, r, half)?;
                    let b = self.fit(b, &a.ty().top, &a.ty().bottom)?;
                    Term::sum(a, b).ok()
                } else {
                    let [ProtocolAtom::Times(u, w)] = r.0.as_slice() else { unreachable!() };
                    let (u, w) = (u.clone(), w.clone());
                    let a = self.gen(l, &u, half)?;
                    let b = self.gen(l, &w, half)?;
                    let b = self.fit(b, &a.ty().top, &a.ty().bottom)?;
                    Term::prod(a, b).ok()
                }
            }
        }
    }

    fn cut(&mut self, u: &ProtocolWord) -> (ProtocolWord, ProtocolWord) {
        let k = self.rng.gen_range(0..=u.len());
        (u.prefix(k), u.suffix(k))
    }

    /// A small term of the given vertical boundary built from closers and
    /// openers.
    fn connect(&mut self, l: &ProtocolWord, r: &ProtocolWord) -> Option<Term> {
        if l.is_unit() && r.is_unit() {
            return Some(self.base_leaf());
        }
        if l == r {
            return Some(Term::hid(l.clone()));
        }
        if !self.cfg.special {
            return None;
        }
        let c = self.closer(l)?;
        let o = self.opener(r)?;
        Term::hcomp(c, o).ok()
    }

    /// A term `⟨U|…|I⟩`.
    pub fn closer(&mut self, u: &ProtocolWord) -> Option<Term> {
        let mut acc: Option<Term> = None;
        for atom in &u.0 {
            let t = match atom {
                ProtocolAtom::Send(a) => Term::corner(Corner::UR, a.clone()),
                ProtocolAtom::Recv(a) => Term::corner(Corner::LR, a.clone()),
                ProtocolAtom::Plus(x, y) => {
                    let a = self.closer(x)?;
                    let b = self.closer(y)?;
                    let b = self.fit(b, &a.ty().top, &a.ty().bottom)?;
                    Term::sum(a, b).ok()?
                }
                ProtocolAtom::Times(x, y) => {
                    let i = self.rng.gen_range(0..2u8);
                    let p = Term::proj(i, x.clone(), y.clone()).ok()?;
                    let c = self.closer(if i == 0 { x } else { y })?;
                    Term::hcomp(p, c).ok()?
                }
            };
            acc = Some(match acc {
                None => t,
                Some(a) => self.vjoin(a, t)?,
            });
        }
        Some(acc.unwrap_or_else(|| Term::hid(ProtocolWord::unit())))
    }

    /// A term `⟨I|…|U⟩`.
    pub fn opener(&mut self, u: &ProtocolWord) -> Option<Term> {
        let mut acc: Option<Term> = None;
        for atom in &u.0 {
            let t = match atom {
                ProtocolAtom::Send(a) => Term::corner(Corner::LL, a.clone()),
                ProtocolAtom::Recv(a) => Term::corner(Corner::UL, a.clone()),
                ProtocolAtom::Times(x, y) => {
                    let a = self.opener(x)?;
                    let b = self.opener(y)?;
                    let b = self.fit(b, &a.ty().top, &a.ty().bottom)?;
                    Term::prod(a, b).ok()?
                }
                ProtocolAtom::Plus(x, y) => {
                    let i = self.rng.gen_range(0..2u8);
                    let j = Term::inj(i, x.clone(), y.clone()).ok()?;
                    let c = self.opener(if i == 0 { x } else { y })?;
                    Term::hcomp(c, j).ok()?
                }
            };
            acc = Some(match acc {
                None => t,
                Some(a) => self.vjoin(a, t)?,
            });
        }
        Some(acc.unwrap_or_else(|| Term::hid(ProtocolWord::unit())))
    }

    /// `a · b`, with a bridge between them when the objects differ.
    fn vjoin(&mut self, a: Term, b: Term) -> Option<Term> {
        let (x, y) = (a.ty().bottom.clone(), b.ty().top.clone());
        if x == y {
            return Term::vcomp(a, b).ok();
        }
        let h = self.bridge(&x, &y)?;
        Term::vcomp(a, Term::vcomp(Term::base(h), b).ok()?).ok()
    }

    /// Adjust `t` to the given top and bottom objects.
    pub fn fit(&mut self, t: Term, top: &ObjectWord, bottom: &ObjectWord) -> Option<Term> {
        let mut t = t;
        if t.ty().top != *top {
            let h = self.bridge(top, &t.ty().top.clone())?;
            t = Term::vcomp(Term::base(h), t).ok()?;
        }
        if t.ty().bottom != *bottom {
            let h = self.bridge(&t.ty().bottom.clone(), bottom)?;
            t = Term::vcomp(t, Term::base(h)).ok()?;
        }
        Some(t)
    }

    /// The shortest base morphism `x → y` over words of bounded length.
    pub fn bridge(&mut self, x: &ObjectWord, y: &ObjectWord) -> Option<BaseMor> {
        let key = (x.clone(), y.clone());
        if let Some(r) = self.bridges.get(&key) {
            return r.clone();
        }
        let r = bridge_search(self.sig, x, y);
        self.bridges.insert(key, r.clone());
        r
    }
}

fn bridge_search(sig: &Signature, x: &ObjectWord, y: &ObjectWord) -> Option<BaseMor> {
    const MAX_LEN: usize = 4;
    const MAX_DEPTH: usize = 10;
    let mut seen: HashSet<ObjectWord> = HashSet::from([x.clone()]);
    let mut queue: VecDeque<(ObjectWord, Vec<Slice>)> = VecDeque::from([(x.clone(), Vec::new())]);
    while let Some((w, path)) = queue.pop_front() {
        if w == *y {
            let f = canonicalize(path, x.clone()).ok()?;
            return Some(if f.slices().is_empty() { mor_id(x) } else { mor_comp(&mor_id(x), &f).ok()? });
        }
        if path.len() >= MAX_DEPTH {
            continue;
        }
        for g in &sig.gens {
            let d = g.dom.len();
            if d > w.len() {
                continue;
            }
            for off in 0..=w.len() - d {
                if w.sub(off, off + d) != g.dom {
                    continue;
                }
                let s = Slice { left: w.sub(0, off), gen: g.clone(), right: w.sub(off + d, w.len()) };
                let next = s.cod();
                if next.len() > MAX_LEN || !seen.insert(next.clone()) {
                    continue;
                }
                let mut p = path.clone();
                p.push(s);
                queue.push_back((next, p));
            }
        }
    }
    None
}
