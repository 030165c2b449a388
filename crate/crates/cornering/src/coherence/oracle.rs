//! Exhaustive comparison of the equality decision with bounded search.
//!
//! Every enumerated vertical term is searched, without the normalizer, for a
//! base leaf it reaches. Terms reaching the same leaf are joinable. The
//! decision agrees with joinability on all pairs of a type exactly when each
//! term's normal form is its leaf and no two distinct leaves of a type are
//! connected in the move graph.

use std::collections::HashMap;
use std::fmt;

use crate::base::{BaseMor, Signature};
use crate::protocol::ProtocolWord;
use crate::term::{CellType, Node, Term};

use super::{components, enumerate_vertical, find_base_leaf, leaf_alphabet, normalize_vertical, JoinConfig};

#[derive(Clone, Debug)]
pub struct OracleConfig {
    /// Largest term enumerated, in nodes.
    pub max_size: usize,
    /// Depth of the search for a leaf.
    pub depth: usize,
    /// Nodes the search for a leaf may add to a term.
    pub slack: usize,
    /// Largest term visited when looking for a path between two leaves.
    pub leaf_cap: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_size: 7, depth: 12, slack: 2, leaf_cap: 5 }
    }
}

#[derive(Clone, Debug, Default)]
pub struct OracleReport {
    pub terms: usize,
    pub types: usize,
    pub classes: usize,
    /// Unordered pairs of distinct terms sharing a type.
    pub pairs: u64,
    /// Terms whose normal form differs from the leaf found by search, or for
    /// which no leaf was found.
    pub disagreements: usize,
    /// Pairs of distinct leaves of one type connected by moves.
    pub joined_leaves: usize,
    pub states: usize,
    pub first: Option<String>,
}

impl OracleReport {
    pub fn agrees(&self) -> bool {
        self.disagreements == 0 && self.joined_leaves == 0
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} terms, {} types, {} classes, {} pairs, {} disagreements, {} joined leaf pairs ({} states)",
            self.terms, self.types, self.classes, self.pairs, self.disagreements, self.joined_leaves, self.states
        )?;
        if let Some(x) = &self.first {
            write!(f, "; first: {x}")?;
        }
        Ok(())
    }
}

/// Compare [`super::decide_vertical_eq`] with bounded joinability on every
/// vertical term of at most `cfg.max_size` nodes over `sig`, with
/// injections and projections between atomic protocols.
pub fn oracle_agreement(sig: &Signature, cfg: &OracleConfig) -> OracleReport {
    let protocols: Vec<ProtocolWord> = sig
        .objects
        .iter()
        .flat_map(|o| {
            let a = sig.word(&[o]);
            [ProtocolWord::send(a.clone()), ProtocolWord::recv(a)]
        })
        .collect();
    let terms = enumerate_vertical(&leaf_alphabet(sig, &protocols), cfg.max_size);
    let join = JoinConfig { rules: sig.rules.clone(), size_slack: cfg.slack, ..JoinConfig::default() };
    let mut report = OracleReport { terms: terms.len(), ..OracleReport::default() };
    let mut per_type: HashMap<CellType, usize> = HashMap::new();
    let mut leaves: HashMap<CellType, Vec<BaseMor>> = HashMap::new();
    for t in &terms {
        *per_type.entry(t.ty().clone()).or_default() += 1;
        let found = find_base_leaf(t, &join, cfg.depth);
        let nf = normalize_vertical(t, &sig.rules);
        let why = match (&found, &nf) {
            (None, _) => Some(format!("no leaf within depth {} from {t}", cfg.depth)),
            (_, Err(e)) => Some(format!("{t}: {e}")),
            (Some((w, _)), Ok(n)) => match w.node() {
                Node::Base(f) if *f == n.f => None,
                _ => Some(format!("{t} reaches {w} but normalizes to {}", Term::base(n.f.clone()))),
            },
        };
        if let Some((w, _)) = &found {
            if let Node::Base(f) = w.node() {
                let ls = leaves.entry(t.ty().clone()).or_default();
                if !ls.contains(f) {
                    ls.push(f.clone());
                }
            }
        }
        if let Some(why) = why {
            report.disagreements += 1;
            report.first.get_or_insert(why);
        }
    }
    report.types = per_type.len();
    report.pairs = per_type.values().map(|&n| (n as u64) * (n as u64 - 1) / 2).sum();
    report.classes = leaves.values().map(Vec::len).sum();
    let seeds: Vec<Term> = leaves.values().flatten().map(|f| Term::base(f.clone())).collect();
    match components(&seeds, &join, cfg.leaf_cap, 5_000_000) {
        Some((labels, states)) => {
            report.states = states;
            let mut by_label: HashMap<usize, Vec<&Term>> = HashMap::new();
            for (t, l) in seeds.iter().zip(labels) {
                by_label.entry(l).or_default().push(t);
            }
            for group in by_label.values().filter(|g| g.len() > 1) {
                report.joined_leaves += group.len() * (group.len() - 1) / 2;
                report.first.get_or_insert_with(|| format!("{} and {} are connected", group[0], group[1]));
            }
        }
        None => {
            report.joined_leaves += 1;
            report.first.get_or_insert_with(|| "leaf search exceeded its state budget".into());
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherence::samples;

    #[test]
    fn small_sizes_agree() {
        let r = oracle_agreement(&samples::two_generator(), &OracleConfig { max_size: 3, depth: 8, slack: 2, leaf_cap: 3 });
        assert!(r.agrees(), "{r}");
        assert!(r.terms > 10 && r.classes > 2, "{r}");
    }
}
