//! One-step rewriting of base morphisms by user rules, closed under
//! composition and tensor with identities.

use std::collections::HashSet;

use super::{canonicalize, swap_adjacent, BaseMor, BaseRule, Diagram, End, Name, Slice, SwapBias};

/// The result of firing one rule somewhere inside a morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseRewrite {
    pub rule: Name,
    pub result: BaseMor,
}

/// The measure used for the lexicographic termination check: the number of
/// generator occurrences. It is invariant under equality in the free category.
pub fn slice_measure(f: &BaseMor) -> u64 {
    f.slices().len() as u64
}

/// All one-step rewrites of `f`, deduplicated by rule and result.
pub fn enumerate_base_rewrites(f: &BaseMor, rules: &[BaseRule]) -> Vec<BaseRewrite> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    if f.slices().is_empty() {
        return out;
    }
    let fd = f.diagram();
    for rule in rules {
        if rule.lhs.slices().is_empty() {
            continue;
        }
        let ld = rule.lhs.diagram();
        let mut assign = vec![usize::MAX; ld.node_count()];
        let mut used = vec![false; fd.node_count()];
        let mut matches = Vec::new();
        search(&ld, &fd, 0, &mut assign, &mut used, &mut matches);
        for m in matches {
            if let Some(result) = fire(f, &fd, rule, &m) {
                if seen.insert((rule.name.clone(), result.clone())) {
                    out.push(BaseRewrite { rule: rule.name.clone(), result });
                }
            }
        }
    }
    out
}

/// Rewrite with the first available rule until none applies. Returns `None`
/// when `max_steps` rewrites did not reach a normal form.
pub fn normalize_base(f: &BaseMor, rules: &[BaseRule], max_steps: usize) -> Option<(BaseMor, Vec<BaseRewrite>)> {
    let mut cur = f.clone();
    let mut steps = Vec::new();
    loop {
        let next = enumerate_base_rewrites(&cur, rules).into_iter().next();
        match next {
            None => return Some((cur, steps)),
            Some(rw) => {
                if steps.len() >= max_steps {
                    return None;
                }
                cur = rw.result.clone();
                steps.push(rw);
            }
        }
    }
}

fn search(l: &Diagram, f: &Diagram, a: usize, assign: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
    if a == l.node_count() {
        out.push(assign.clone());
        return;
    }
    for m in 0..f.node_count() {
        if used[m] || f.gens[m] != l.gens[a] {
            continue;
        }
        assign[a] = m;
        if consistent(l, f, a, assign) {
            used[m] = true;
            search(l, f, a + 1, assign, used, out);
            used[m] = false;
        }
        assign[a] = usize::MAX;
    }
}

/// Internal wires of the pattern incident to node `a` agree with the target.
fn consistent(l: &Diagram, f: &Diagram, a: usize, assign: &[usize]) -> bool {
    let m = assign[a];
    for (j, src) in l.ins[a].iter().enumerate() {
        if let End::Out(b, p) = src {
            if assign[*b] != usize::MAX && f.ins[m][j] != End::Out(assign[*b], *p) {
                return false;
            }
        }
    }
    for (p, dst) in l.outs[a].iter().enumerate() {
        if let End::In(b, q) = dst {
            if assign[*b] != usize::MAX && f.outs[m][p] != End::In(assign[*b], *q) {
                return false;
            }
        }
    }
    true
}

fn reach(d: &Diagram, from: &[usize], forward: bool) -> Vec<bool> {
    let mut seen = vec![false; d.node_count()];
    let mut stack: Vec<usize> = from.to_vec();
    while let Some(k) = stack.pop() {
        let next: Vec<usize> = if forward {
            d.outs[k].iter().filter_map(|e| if let End::In(n, _) = e { Some(*n) } else { None }).collect()
        } else {
            d.ins[k].iter().filter_map(|e| if let End::Out(n, _) = e { Some(*n) } else { None }).collect()
        };
        for n in next {
            if !seen[n] {
                seen[n] = true;
                stack.push(n);
            }
        }
    }
    seen
}

fn fire(f: &BaseMor, fd: &Diagram, rule: &BaseRule, m: &[usize]) -> Option<BaseMor> {
    let n = fd.node_count();
    let mut in_s = vec![false; n];
    for &k in m {
        in_s[k] = true;
    }
    let desc = reach(fd, m, true);
    let anc = reach(fd, m, false);
    if (0..n).any(|k| !in_s[k] && desc[k] && anc[k]) {
        return None;
    }
    let base_rank: Vec<Option<u8>> = (0..n)
        .map(|k| {
            if in_s[k] {
                Some(1)
            } else if anc[k] {
                Some(0)
            } else if desc[k] {
                Some(2)
            } else {
                None
            }
        })
        .collect();
    let first_s = (0..n).find(|k| in_s[*k]).unwrap_or(0);
    let trials: [&dyn Fn(usize) -> u8; 3] = [&|_| 0, &|_| 2, &|k| if k < first_s { 0 } else { 2 }];
    for free in trials {
        let rank: Vec<u8> = (0..n).map(|k| base_rank[k].unwrap_or_else(|| free(k))).collect();
        if let Some(r) = sort_and_splice(f, &rank, rule, m) {
            return Some(r);
        }
    }
    None
}

fn sort_and_splice(f: &BaseMor, rank: &[u8], rule: &BaseRule, m: &[usize]) -> Option<BaseMor> {
    let mut slices: Vec<Slice> = f.slices().to_vec();
    let mut ids: Vec<usize> = (0..slices.len()).collect();
    let n = slices.len();
    for _ in 0..n * n + 8 {
        let mut changed = false;
        for k in 0..n.saturating_sub(1) {
            if rank[ids[k]] > rank[ids[k + 1]] {
                if let Some((a, b)) = swap_adjacent(&slices[k], &slices[k + 1], SwapBias::Left) {
                    slices[k] = a;
                    slices[k + 1] = b;
                    ids.swap(k, k + 1);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let pos: Vec<usize> = (0..n).filter(|p| rank[ids[*p]] == 1).collect();
    let (start, end) = (pos[0], pos[pos.len() - 1] + 1);
    if end - start != pos.len() {
        return None;
    }
    let block = &slices[start..end];
    let lhs = &rule.lhs;
    let first_node = ids[start];
    let lhs_node = m.iter().position(|x| *x == first_node)?;
    let off = block[0].left.len().checked_sub(lhs.slices()[lhs_node].left.len())?;
    let width = block[0].dom().len();
    let rlen = width.checked_sub(off + lhs.dom().len())?;
    let bdom = block[0].dom();
    let mut trimmed = Vec::with_capacity(block.len());
    for s in block {
        if s.left.len() < off || s.right.len() < rlen {
            return None;
        }
        trimmed.push(Slice { left: s.left.sub(off, s.left.len()), gen: s.gen.clone(), right: s.right.sub(0, s.right.len() - rlen) });
    }
    let inner = canonicalize(trimmed, bdom.sub(off, width - rlen)).ok()?;
    if inner != *lhs {
        return None;
    }
    let lw = bdom.sub(0, off);
    let rw = bdom.sub(width - rlen, width);
    let mut out: Vec<Slice> = slices[..start].to_vec();
    out.extend(rule.rhs.slices().iter().map(|s| Slice { left: lw.concat(&s.left), gen: s.gen.clone(), right: s.right.concat(&rw) }));
    out.extend(slices[end..].iter().cloned());
    canonicalize(out, f.dom().clone()).ok()
}
