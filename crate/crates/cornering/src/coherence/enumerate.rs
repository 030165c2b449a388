//! Exhaustive enumeration of well-typed terms over a finite leaf alphabet.

use std::collections::{HashMap, HashSet};

use crate::base::{ObjectWord, Signature};
use crate::protocol::ProtocolWord;
use crate::term::{Corner, Term};

/// The leaves over a signature: generators, identities, corners at each
/// object, and injections and projections between the given protocols.
pub fn leaf_alphabet(sig: &Signature, protocols: &[ProtocolWord]) -> Vec<Term> {
    let mut out: Vec<Term> = sig.gens.iter().map(|g| Term::base(sig.mor(&g.name))).collect();
    out.push(Term::vid(ObjectWord::unit()));
    out.push(Term::hid(ProtocolWord::unit()));
    for o in &sig.objects {
        let a = ObjectWord(vec![o.clone()]);
        out.push(Term::vid(a.clone()));
        for k in [Corner::UR, Corner::UL, Corner::LR, Corner::LL] {
            out.push(Term::corner(k, a.clone()));
        }
    }
    for u in protocols {
        for w in protocols {
            for i in 0..2 {
                out.extend(Term::inj(i, u.clone(), w.clone()));
                out.extend(Term::proj(i, u.clone(), w.clone()));
            }
        }
    }
    out
}

/// All distinct terms of at most `max_size` nodes built from `leaves` with
/// the four binary constructors.
pub fn enumerate_terms(leaves: &[Term], max_size: usize) -> Vec<Term> {
    enumerate_pruned(leaves, max_size, |_| true)
}

/// All distinct vertical terms of at most `max_size` nodes. Leaves have
/// boundaries of length at most one, so a term is kept only while the
/// leaves it may still receive can close its boundary.
pub fn enumerate_vertical(leaves: &[Term], max_size: usize) -> Vec<Term> {
    assert!(leaves.iter().all(|l| l.ty().left.len() <= 1 && l.ty().right.len() <= 1));
    let keep = |t: &Term| t.ty().left.len() + t.ty().right.len() <= (max_size - t.size()) / 2;
    let mut out = enumerate_pruned(leaves, max_size, keep);
    out.retain(|t| t.ty().is_vertical());
    out
}

fn enumerate_pruned(leaves: &[Term], max_size: usize, keep: impl Fn(&Term) -> bool) -> Vec<Term> {
    let mut by_size: Vec<Vec<Term>> = vec![Vec::new(); max_size + 1];
    let mut seen: HashSet<Term> = HashSet::new();
    if max_size >= 1 {
        for l in leaves {
            if keep(l) && seen.insert(l.clone()) {
                by_size[1].push(l.clone());
            }
        }
    }
    for n in 3..=max_size {
        let mut fresh = Vec::new();
        for k in 1..n - 1 {
            let (xs, ys) = (&by_size[k], &by_size[n - 1 - k]);
            if xs.is_empty() || ys.is_empty() {
                continue;
            }
            let mut by_top: HashMap<&ObjectWord, Vec<&Term>> = HashMap::new();
            let mut by_left: HashMap<&ProtocolWord, Vec<&Term>> = HashMap::new();
            for y in ys {
                by_top.entry(&y.ty().top).or_default().push(y);
                by_left.entry(&y.ty().left).or_default().push(y);
            }
            for x in xs {
                for y in by_top.get(&x.ty().bottom).into_iter().flatten() {
                    fresh.extend(Term::vcomp(x.clone(), (*y).clone()).ok());
                }
                for y in by_left.get(&x.ty().right).into_iter().flatten() {
                    fresh.extend(Term::hcomp(x.clone(), (*y).clone()).ok());
                }
                for y in by_top.get(&x.ty().top).into_iter().flatten() {
                    if y.ty().bottom == x.ty().bottom {
                        fresh.extend(Term::sum(x.clone(), (*y).clone()).ok());
                        fresh.extend(Term::prod(x.clone(), (*y).clone()).ok());
                    }
                }
            }
        }
        for t in fresh {
            if keep(&t) && seen.insert(t.clone()) {
                by_size[n].push(t);
            }
        }
    }
    by_size.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherence::samples;

    #[test]
    fn small_sizes_are_well_typed_and_distinct() {
        let sig = samples::two_generator();
        let leaves = leaf_alphabet(&sig, &[]);
        let ts = enumerate_terms(&leaves, 3);
        let set: HashSet<_> = ts.iter().collect();
        assert_eq!(set.len(), ts.len());
        assert!(ts.iter().all(|t| t.size() <= 3));
        let f = Term::base(sig.mor("f"));
        let g = Term::base(sig.mor("g"));
        assert!(ts.contains(&Term::vcomp(f.clone(), g).unwrap()));
        assert!(ts.contains(&Term::hcomp(f.clone(), f).unwrap()));
    }
}
