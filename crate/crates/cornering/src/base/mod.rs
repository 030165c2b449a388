//! The free planar strict monoidal category over a signature.
//!
//! Morphisms are stored as a list of slices `1_left ⊗ g ⊗ 1_right`. Equality
//! is decided by a planar-map invariant of the underlying string diagram (see
//! [`planar`]), so two slice lists that differ by interchange moves compare
//! equal even when generators have unit domain or codomain.

mod planar;
mod rewrite;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use thiserror::Error;

pub use planar::{Diagram, End};
pub use rewrite::{enumerate_base_rewrites, normalize_base, slice_measure, BaseRewrite};

pub type Name = Arc<str>;

/// An object of the base category: a word of generating objects.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectWord(pub Vec<Name>);

impl ObjectWord {
    pub fn unit() -> Self {
        ObjectWord(Vec::new())
    }

    pub fn atom(name: impl Into<Name>) -> Self {
        ObjectWord(vec![name.into()])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &ObjectWord) -> ObjectWord {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        ObjectWord(v)
    }

    pub fn sub(&self, from: usize, to: usize) -> ObjectWord {
        ObjectWord(self.0[from..to].to_vec())
    }

    pub fn reversed(&self) -> ObjectWord {
        let mut v = self.0.clone();
        v.reverse();
        ObjectWord(v)
    }
}

impl fmt::Display for ObjectWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "I");
        }
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            write!(f, "{n}")?;
        }
        Ok(())
    }
}

/// A generating morphism.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct MorGen {
    pub name: Name,
    pub dom: ObjectWord,
    pub cod: ObjectWord,
}

pub type Gen = Arc<MorGen>;

/// `1_left ⊗ gen ⊗ 1_right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slice {
    pub left: ObjectWord,
    pub gen: Gen,
    pub right: ObjectWord,
}

impl Slice {
    pub fn dom(&self) -> ObjectWord {
        self.left.concat(&self.gen.dom).concat(&self.right)
    }

    pub fn cod(&self) -> ObjectWord {
        self.left.concat(&self.gen.cod).concat(&self.right)
    }

    fn offset(&self) -> usize {
        self.left.len()
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum BaseError {
    #[error("boundary mismatch: expected {expected}, found {found}")]
    BoundaryMismatch { expected: ObjectWord, found: ObjectWord },
    #[error("slice {index} does not chain with its predecessor")]
    ChainBroken { index: usize },
}

/// Canonical comparison key of a morphism.
pub(crate) type Key = Vec<planar::Tok>;

struct MorInner {
    dom: ObjectWord,
    cod: ObjectWord,
    slices: Vec<Slice>,
    key: OnceLock<Key>,
    hash: OnceLock<u64>,
}

/// A morphism of the free monoidal category.
#[derive(Clone)]
pub struct BaseMor(Arc<MorInner>);

impl BaseMor {
    fn from_parts(dom: ObjectWord, cod: ObjectWord, slices: Vec<Slice>) -> BaseMor {
        BaseMor(Arc::new(MorInner { dom, cod, slices, key: OnceLock::new(), hash: OnceLock::new() }))
    }

    pub fn dom(&self) -> &ObjectWord {
        &self.0.dom
    }

    pub fn cod(&self) -> &ObjectWord {
        &self.0.cod
    }

    /// Representative slice list (leftmost-first interchange order).
    pub fn slices(&self) -> &[Slice] {
        &self.0.slices
    }

    pub fn is_identity(&self) -> bool {
        self.0.slices.is_empty()
    }

    pub fn generator(g: &Gen) -> BaseMor {
        BaseMor::from_parts(
            g.dom.clone(),
            g.cod.clone(),
            vec![Slice { left: ObjectWord::unit(), gen: g.clone(), right: ObjectWord::unit() }],
        )
    }

    pub(crate) fn key(&self) -> &Key {
        self.0.key.get_or_init(|| planar::key(self))
    }

    fn key_hash(&self) -> u64 {
        *self.0.hash.get_or_init(|| {
            let mut h = std::collections::hash_map::DefaultHasher::new();
            self.key().hash(&mut h);
            h.finish()
        })
    }

    pub fn diagram(&self) -> Diagram {
        Diagram::build(self)
    }
}

impl PartialEq for BaseMor {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.dom == other.0.dom && self.0.cod == other.0.cod && self.key_hash() == other.key_hash() && self.key() == other.key())
    }
}

impl Eq for BaseMor {}

impl Hash for BaseMor {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.key_hash());
    }
}

impl fmt::Debug for BaseMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BaseMor({} : {} -> {})", crate::dsl::print_base(self), self.dom(), self.cod())
    }
}

pub fn mor_id(w: &ObjectWord) -> BaseMor {
    BaseMor::from_parts(w.clone(), w.clone(), Vec::new())
}

pub fn mor_comp(f: &BaseMor, g: &BaseMor) -> Result<BaseMor, BaseError> {
    if f.cod() != g.dom() {
        return Err(BaseError::BoundaryMismatch { expected: f.cod().clone(), found: g.dom().clone() });
    }
    if f.is_identity() {
        return Ok(g.clone());
    }
    if g.is_identity() {
        return Ok(f.clone());
    }
    let mut slices = f.slices().to_vec();
    slices.extend(g.slices().iter().cloned());
    canonicalize(slices, f.dom().clone())
}

pub fn mor_tensor(f: &BaseMor, g: &BaseMor) -> BaseMor {
    if f.dom().is_unit() && f.cod().is_unit() && f.is_identity() {
        return g.clone();
    }
    if g.dom().is_unit() && g.cod().is_unit() && g.is_identity() {
        return f.clone();
    }
    let mut slices: Vec<Slice> =
        f.slices().iter().map(|s| Slice { left: s.left.clone(), gen: s.gen.clone(), right: s.right.concat(g.dom()) }).collect();
    slices.extend(g.slices().iter().map(|s| Slice { left: f.cod().concat(&s.left), gen: s.gen.clone(), right: s.right.clone() }));
    canonicalize(slices, f.dom().concat(g.dom())).expect("tensor of chained slice lists chains")
}

/// Tensor of a list of morphisms, left to right.
pub fn mor_tensor_all<'a>(fs: impl IntoIterator<Item = &'a BaseMor>) -> BaseMor {
    fs.into_iter().fold(mor_id(&ObjectWord::unit()), |acc, f| mor_tensor(&acc, f))
}

/// Check that the slices chain starting at `dom` and put them in
/// leftmost-first interchange order.
pub fn canonicalize(mut slices: Vec<Slice>, dom: ObjectWord) -> Result<BaseMor, BaseError> {
    let mut cur = dom.clone();
    for (i, s) in slices.iter().enumerate() {
        if s.dom() != cur {
            return Err(BaseError::ChainBroken { index: i });
        }
        cur = s.cod();
    }
    let n = slices.len();
    let cap = n * n + 8;
    for _ in 0..cap {
        let mut changed = false;
        for k in 0..n.saturating_sub(1) {
            if prefers_swap(&slices[k], &slices[k + 1]) {
                if let Some((a, b)) = swap_adjacent(&slices[k], &slices[k + 1], SwapBias::Left) {
                    slices[k] = a;
                    slices[k + 1] = b;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(BaseMor::from_parts(dom, cur, slices))
}

/// `s2` acts strictly to the left of everything `s1` produced.
fn prefers_swap(s1: &Slice, s2: &Slice) -> bool {
    let (l1, c1) = (s1.offset(), s1.gen.cod.len());
    let (l2, d2) = (s2.offset(), s2.gen.dom.len());
    let d1 = s1.gen.dom.len();
    let c2 = s2.gen.cod.len();
    if l2 + d2 < l1 {
        return true;
    }
    if l2 + d2 == l1 {
        // Equal edges only swap when the result cannot swap back.
        return !(d1 == 0 && c2 == 0) && !(d2 == 0 && c1 == 0);
    }
    false
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum SwapBias {
    Left,
}

/// Exchange two consecutive slices `s1 ; s2` into `s2' ; s1'` when they act
/// on disjoint parts of the intermediate object. Returns `None` when the
/// second slice touches what the first produced.
pub(crate) fn swap_adjacent(s1: &Slice, s2: &Slice, _bias: SwapBias) -> Option<(Slice, Slice)> {
    let (l1, d1, c1) = (s1.offset(), s1.gen.dom.len(), s1.gen.cod.len());
    let (l2, d2, c2) = (s2.offset(), s2.gen.dom.len(), s2.gen.cod.len());
    let dom = s1.dom();
    let mid = s1.cod();
    let left_ok = l2 + d2 <= l1;
    let right_ok = l2 >= l1 + c1;
    if left_ok {
        // s2 first, at the same offset in dom(s1).
        let n2 = Slice { left: dom.sub(0, l2), gen: s2.gen.clone(), right: dom.sub(l2 + d2, dom.len()) };
        let after = n2.cod();
        let o1 = l1 + c2 - d2;
        let n1 = Slice { left: after.sub(0, o1), gen: s1.gen.clone(), right: after.sub(o1 + d1, after.len()) };
        debug_assert_eq!(n1.cod(), s2.cod());
        let _ = mid;
        return Some((n2, n1));
    }
    if right_ok {
        let o2 = l2 + d1 - c1;
        let n2 = Slice { left: dom.sub(0, o2), gen: s2.gen.clone(), right: dom.sub(o2 + d2, dom.len()) };
        let after = n2.cod();
        let n1 = Slice { left: after.sub(0, l1), gen: s1.gen.clone(), right: after.sub(l1 + d1, after.len()) };
        debug_assert_eq!(n1.cod(), s2.cod());
        return Some((n2, n1));
    }
    None
}

pub fn base_eq(f: &BaseMor, g: &BaseMor) -> bool {
    f == g
}

/// A rewrite rule of the base category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseRule {
    pub name: Name,
    pub lhs: BaseMor,
    pub rhs: BaseMor,
    pub measure_drop: Option<u64>,
}

impl BaseRule {
    pub fn new(name: impl Into<Name>, lhs: BaseMor, rhs: BaseMor) -> Result<BaseRule, BaseError> {
        if lhs.dom() != rhs.dom() {
            return Err(BaseError::BoundaryMismatch { expected: lhs.dom().clone(), found: rhs.dom().clone() });
        }
        if lhs.cod() != rhs.cod() {
            return Err(BaseError::BoundaryMismatch { expected: lhs.cod().clone(), found: rhs.cod().clone() });
        }
        Ok(BaseRule { name: name.into(), lhs, rhs, measure_drop: None })
    }
}

/// Objects, generators and rules.
#[derive(Clone, Debug, Default)]
pub struct Signature {
    pub objects: Vec<Name>,
    pub gens: Vec<Gen>,
    pub rules: Vec<BaseRule>,
}

impl Signature {
    pub fn object(&self, name: &str) -> Option<Name> {
        self.objects.iter().find(|o| &***o == name).cloned()
    }

    pub fn gen(&self, name: &str) -> Option<&Gen> {
        self.gens.iter().find(|g| &*g.name == name)
    }

    pub fn add_object(&mut self, name: &str) -> Name {
        if let Some(o) = self.object(name) {
            return o;
        }
        let n: Name = name.into();
        self.objects.push(n.clone());
        n
    }

    pub fn add_gen(&mut self, name: &str, dom: ObjectWord, cod: ObjectWord) -> Gen {
        let g = Arc::new(MorGen { name: name.into(), dom, cod });
        self.gens.push(g.clone());
        g
    }

    pub fn word(&self, names: &[&str]) -> ObjectWord {
        ObjectWord(names.iter().map(|n| self.object(n).unwrap_or_else(|| (*n).into())).collect())
    }

    pub fn mor(&self, name: &str) -> BaseMor {
        BaseMor::generator(self.gen(name).unwrap_or_else(|| panic!("unknown generator {name}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bakery() -> Signature {
        let mut s = Signature::default();
        s.add_object("Ingr");
        s.add_object("Food");
        let i = s.word(&["Ingr"]);
        let f = s.word(&["Food"]);
        let ii = s.word(&["Ingr", "Ingr"]);
        let u = ObjectWord::unit();
        s.add_gen("water", u.clone(), i.clone());
        s.add_gen("flour", u.clone(), i.clone());
        s.add_gen("bread", u.clone(), f.clone());
        s.add_gen("mix", ii, i.clone());
        s.add_gen("bake", i, f.clone());
        s.add_gen("eat", f, u);
        s
    }

    #[test]
    fn identity_and_units() {
        let s = bakery();
        let w = s.word(&["Ingr"]);
        assert!(mor_id(&ObjectWord::unit()).slices().is_empty());
        let bake = s.mor("bake");
        assert_eq!(mor_comp(&mor_id(&w), &bake).unwrap(), bake);
        assert_eq!(mor_comp(&bake, &mor_id(bake.cod())).unwrap(), bake);
        assert_eq!(mor_tensor(&bake, &mor_id(&ObjectWord::unit())), bake);
    }

    #[test]
    fn bread_recipe_has_four_slices() {
        let s = bakery();
        let wf = mor_tensor(&s.mor("water"), &s.mor("flour"));
        assert_eq!(&*wf.slices()[0].gen.name, "water");
        let r = mor_comp(&mor_comp(&wf, &s.mor("mix")).unwrap(), &s.mor("bake")).unwrap();
        assert_eq!(r.slices().len(), 4);
        assert!(r.dom().is_unit());
        assert_eq!(r.cod(), &s.word(&["Food"]));
    }

    #[test]
    fn comp_mismatch_is_error() {
        let s = bakery();
        assert!(matches!(mor_comp(&s.mor("eat"), &s.mor("bake")), Err(BaseError::BoundaryMismatch { .. })));
    }

    #[test]
    fn interchange_of_disjoint_slices() {
        let s = bakery();
        let bake = s.mor("bake");
        let eat = s.mor("eat");
        let ia = mor_id(bake.dom());
        let ib = mor_id(bake.cod());
        let ic = mor_id(eat.dom());
        let id = mor_id(eat.cod());
        let l = mor_comp(&mor_tensor(&bake, &ic), &mor_tensor(&ib, &eat)).unwrap();
        let r = mor_comp(&mor_tensor(&ia, &eat), &mor_tensor(&bake, &id)).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn effect_then_state_commute_both_ways() {
        // eat ; water may be drawn with water left or right of the point
        // where eat's wire ended.
        let s = bakery();
        let eat = s.mor("eat");
        let water = s.mor("water");
        let a = mor_comp(&eat, &water).unwrap();
        let b = mor_tensor(&water, &eat);
        let c = mor_tensor(&eat, &water);
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn scalars_commute() {
        let s = bakery();
        let be = mor_comp(&s.mor("bread"), &s.mor("eat")).unwrap();
        let we = mor_comp(&mor_comp(&s.mor("water"), &s.mor("bake")).unwrap(), &s.mor("eat")).unwrap();
        assert_eq!(mor_comp(&be, &we).unwrap(), mor_comp(&we, &be).unwrap());
        assert_eq!(mor_tensor(&be, &we), mor_comp(&be, &we).unwrap());
    }

    #[test]
    fn scalar_sides_of_a_wire_differ() {
        let s = bakery();
        let be = mor_comp(&s.mor("bread"), &s.mor("eat")).unwrap();
        let w = mor_id(&s.word(&["Ingr"]));
        assert_ne!(mor_tensor(&be, &w), mor_tensor(&w, &be));
    }

    #[test]
    fn distinct_generators_differ() {
        let s = bakery();
        assert!(!base_eq(&s.mor("water"), &s.mor("flour")));
        assert_ne!(mor_tensor(&s.mor("water"), &s.mor("flour")), mor_tensor(&s.mor("flour"), &s.mor("water")));
    }
}
