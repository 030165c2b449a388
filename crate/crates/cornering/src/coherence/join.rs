//! Bounded search in the reduction graph, used as an oracle independent of
//! the popped-form normalizer.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, VecDeque};

use crate::base::{enumerate_base_rewrites, BaseRule};
use crate::engine::beta_redex;
use crate::term::{enumerate_struct_steps, Node, Term};

/// Which moves the search may take.
#[derive(Clone, Debug)]
pub struct JoinConfig {
    /// Base rewrite rules; empty disables base rewriting.
    pub rules: Vec<BaseRule>,
    /// Allow basic equations in both directions.
    pub structural: bool,
    /// Intermediate terms may exceed the larger input by this many nodes.
    pub size_slack: usize,
    /// Stop exploring a side after this many distinct terms.
    pub max_states: usize,
}

impl Default for JoinConfig {
    fn default() -> Self {
        JoinConfig { rules: Vec::new(), structural: true, size_slack: 4, max_states: 50_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Joinability {
    /// `witness` is reached from `a` in `left` moves and from `b` in `right`.
    Joinable {
        witness: Term,
        left: usize,
        right: usize,
    },
    Unknown,
}

/// One-move successors of `t`.
pub fn successors(t: &Term, cfg: &JoinConfig) -> Vec<Term> {
    successors_within(t, cfg, usize::MAX)
}

/// One-move successors of `t` with at most `cap` nodes.
pub fn successors_within(t: &Term, cfg: &JoinConfig, cap: usize) -> Vec<Term> {
    let mut out = Vec::new();
    let fits = |before: &Term, after: &Term| t.size() + after.size() <= cap.saturating_add(before.size());
    for (p, s) in t.positions() {
        if let Some((_, r)) = beta_redex(&s) {
            if fits(&s, &r) {
                out.extend(t.replace(&p, r).ok());
            }
        }
        if let Node::Base(f) = s.node() {
            for r in enumerate_base_rewrites(f, &cfg.rules) {
                out.extend(t.replace(&p, Term::base(r.result)).ok());
            }
        }
    }
    if cfg.structural {
        for s in enumerate_struct_steps(t) {
            if fits(&s.before, &s.after) {
                out.extend(t.replace(&s.path, s.after).ok());
            }
        }
    }
    out
}

struct Frontier {
    seen: HashMap<Term, usize>,
    layer: VecDeque<Term>,
    depth: usize,
}

impl Frontier {
    fn new(a: &Term) -> Frontier {
        Frontier { seen: HashMap::from([(a.clone(), 0)]), layer: VecDeque::from([a.clone()]), depth: 0 }
    }

    /// Expand one layer; returns the newly reached terms.
    fn grow(&mut self, cfg: &JoinConfig, cap: usize) -> Vec<Term> {
        let mut fresh = Vec::new();
        self.depth += 1;
        while let Some(t) = self.layer.pop_front() {
            for s in successors(&t, cfg) {
                if s.size() > cap || self.seen.len() >= cfg.max_states || self.seen.contains_key(&s) {
                    continue;
                }
                self.seen.insert(s.clone(), self.depth);
                fresh.push(s);
            }
        }
        self.layer = fresh.iter().cloned().collect();
        fresh
    }
}

/// Every term reachable from `a` in at most `depth` moves, with its distance.
pub fn reach(a: &Term, cfg: &JoinConfig, depth: usize) -> HashMap<Term, usize> {
    let cap = a.size() + cfg.size_slack;
    let mut f = Frontier::new(a);
    while f.depth < depth && !f.layer.is_empty() {
        f.grow(cfg, cap);
    }
    f.seen
}

/// Search for a common reduct, growing both sides alternately up to `depth`
/// moves each.
pub fn joinable_bounded(a: &Term, b: &Term, cfg: &JoinConfig, depth: usize) -> Joinability {
    if a.ty() != b.ty() {
        return Joinability::Unknown;
    }
    if a == b {
        return Joinability::Joinable { witness: a.clone(), left: 0, right: 0 };
    }
    let cap = a.size().max(b.size()) + cfg.size_slack;
    let mut sides = [Frontier::new(a), Frontier::new(b)];
    loop {
        let mut progressed = false;
        for i in 0..2 {
            if sides[i].depth >= depth || sides[i].layer.is_empty() {
                continue;
            }
            progressed = true;
            let fresh = sides[i].grow(cfg, cap);
            let other = &sides[1 - i].seen;
            for t in fresh {
                if let Some(&d) = other.get(&t) {
                    let here = sides[i].seen[&t];
                    let (left, right) = if i == 0 { (here, d) } else { (d, here) };
                    return Joinability::Joinable { witness: t, left, right };
                }
            }
        }
        if !progressed {
            return Joinability::Unknown;
        }
    }
}

/// Best-first search from `a` for a single base leaf, preferring terms with
/// fewer special subterms and fewer nodes. Returns the leaf and its
/// distance.
pub fn find_base_leaf(a: &Term, cfg: &JoinConfig, depth: usize) -> Option<(Term, usize)> {
    let cap = a.size() + cfg.size_slack;
    let mut dist: HashMap<Term, usize> = HashMap::from([(a.clone(), 0)]);
    let mut heap = BinaryHeap::from([Reverse((a.special(), a.size(), 0usize, Keyed(a.clone())))]);
    while let Some(Reverse((_, _, d, Keyed(t)))) = heap.pop() {
        if matches!(t.node(), Node::Base(_)) {
            return Some((t, d));
        }
        if d >= depth || dist.len() >= cfg.max_states {
            continue;
        }
        for s in successors(&t, cfg) {
            if s.size() > cap || dist.get(&s).is_some_and(|&e| e <= d + 1) {
                continue;
            }
            dist.insert(s.clone(), d + 1);
            heap.push(Reverse((s.special(), s.size(), d + 1, Keyed(s))));
        }
    }
    None
}

/// A term ordered by its digest, for use in heaps.
#[derive(Clone, PartialEq, Eq)]
struct Keyed(Term);

impl PartialOrd for Keyed {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Keyed {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.digest_hash().cmp(&other.0.digest_hash())
    }
}

/// Connected components of the move graph restricted to terms of at most
/// `cap` nodes, explored from `seeds`. Returns a component label for each
/// seed and the number of terms explored, or `None` past `max_states`.
/// Terms are identified by their 64-bit structural hash.
pub fn components(seeds: &[Term], cfg: &JoinConfig, cap: usize, max_states: usize) -> Option<(Vec<usize>, usize)> {
    let mut index: HashMap<u64, u32> = HashMap::new();
    let mut parent: Vec<u32> = Vec::new();
    let mut stack: Vec<(u32, Term)> = Vec::new();
    let intern = |t: &Term, index: &mut HashMap<u64, u32>, parent: &mut Vec<u32>, stack: &mut Vec<(u32, Term)>| -> u32 {
        *index.entry(t.digest_hash()).or_insert_with(|| {
            let i = parent.len() as u32;
            parent.push(i);
            stack.push((i, t.clone()));
            i
        })
    };
    let labels: Vec<u32> = seeds.iter().map(|t| intern(t, &mut index, &mut parent, &mut stack)).collect();
    while let Some((i, t)) = stack.pop() {
        for s in successors_within(&t, cfg, cap) {
            let j = intern(&s, &mut index, &mut parent, &mut stack);
            union(&mut parent, i, j);
        }
        if parent.len() > max_states {
            return None;
        }
    }
    let labels = labels.into_iter().map(|i| find(&mut parent, i) as usize).collect();
    Some((labels, parent.len()))
}

fn find(parent: &mut [u32], mut i: u32) -> u32 {
    while parent[i as usize] != i {
        let p = parent[i as usize];
        parent[i as usize] = parent[p as usize];
        i = p;
    }
    i
}

fn union(parent: &mut [u32], a: u32, b: u32) {
    let (a, b) = (find(parent, a), find(parent, b));
    if a != b {
        parent[a.max(b) as usize] = a.min(b);
    }
}
