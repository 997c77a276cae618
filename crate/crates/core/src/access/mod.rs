//! Access structures of graph secret-sharing schemes.
//!
//! A CC scheme `(G, A)` shares a classical bit as `Z_A^s|G⟩`. A player set `S`
//! can read the bit iff some `K_D` with `D ∪ Odd(D) ⊆ S` and `|D ∩ A|` odd
//! exists; it learns nothing iff some `K ⊆ V∖S` has `Odd(K) ∩ S = A ∩ S`.
//! Both conditions are linear systems over GF(2) and exactly one of them
//! holds for every `S`.
//!
//! A QQ scheme shares a qubit held by a dealer vertex `i` of a bipartite
//! graph with orthogonal biadjacency; its access structure is the CC structure
//! of `(G∖i, N_i)`.

mod classify;
mod scheme;

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::code::CodeError;
use crate::graph::{OrthogonalityError, VertexSet};

pub use classify::{check_perfect, classify, Classification, Method, Witness};
pub use scheme::{
    authorized_witness, cc_generators, cc_generators_with_cap, qq_generators,
    qq_generators_with_cap, qq_recovery_witness, unauthorized_witness, validate_authorized_witness,
    validate_unauthorized_witness, CcScheme, QqScheme,
};

/// Largest player count for exhaustive classification.
pub const CLASSIFY_CAP: usize = 20;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AccessError {
    #[error("the encoding set A must be non-empty")]
    EmptyEncodingSet,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("player label {0} is not part of this scheme")]
    UnknownPlayer(usize),
    #[error("the graph is not bipartite")]
    NotBipartite,
    #[error("biadjacency matrix is not orthogonal: {0}")]
    Orthogonality(#[from] OrthogonalityError),
    #[error("{method} method handles at most {cap} players, scheme has {players}")]
    CapExceeded {
        method: &'static str,
        players: usize,
        cap: usize,
    },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("methods disagree on subset {subset:?}: {detail}")]
    Disagreement { subset: Vec<usize>, detail: String },
}

/// Minimal authorized sets of a scheme, in player labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AccessStructure {
    pub players: Vec<usize>,
    pub minimal_sets: BTreeSet<VertexSet>,
}

impl AccessStructure {
    pub fn new(players: Vec<usize>, family: impl IntoIterator<Item = VertexSet>) -> Self {
        Self {
            players,
            minimal_sets: minimize(family),
        }
    }

    pub fn player_count(&self) -> usize {
        self.players.len()
    }

    /// Whether `set` contains some minimal authorized set.
    pub fn is_authorized(&self, set: &VertexSet) -> bool {
        self.minimal_sets.iter().any(|m| m.is_subset(set))
    }

    /// Renames players through `f`.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> Self {
        Self {
            players: self.players.iter().map(|&p| f(p)).collect(),
            minimal_sets: self
                .minimal_sets
                .iter()
                .map(|s| s.iter().map(|&p| f(p)).collect())
                .collect(),
        }
    }

    /// Minimal sets as sorted vectors, in lexicographic order.
    pub fn to_vecs(&self) -> Vec<Vec<usize>> {
        self.minimal_sets
            .iter()
            .map(|s| s.iter().copied().collect())
            .collect()
    }
}

/// The inclusion-minimal members of a family of sets.
pub fn minimize(family: impl IntoIterator<Item = VertexSet>) -> BTreeSet<VertexSet> {
    let mut sets: Vec<VertexSet> = family.into_iter().collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<VertexSet> = Vec::new();
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(&s)) {
            kept.push(s);
        }
    }
    kept.into_iter().collect()
}

/// [`minimize`] on bit masks.
pub fn minimize_masks(family: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let mut masks: Vec<u64> = family.into_iter().collect();
    masks.sort_unstable_by_key(|&m| (m.count_ones(), m));
    masks.dedup();
    let mut kept: Vec<u64> = Vec::new();
    for m in masks {
        if !kept.iter().any(|&k| k & !m == 0) {
            kept.push(m);
        }
    }
    kept
}

/// True iff every two minimal sets intersect.
pub fn check_no_cloning(acc: &AccessStructure) -> bool {
    let sets: Vec<&VertexSet> = acc.minimal_sets.iter().collect();
    sets.iter()
        .enumerate()
        .all(|(i, a)| sets[i + 1..].iter().all(|b| !a.is_disjoint(b)))
}

pub(crate) fn mask_to_set(mask: u64) -> VertexSet {
    (0..64).filter(|&b| mask >> b & 1 == 1).collect()
}

pub(crate) fn set_to_mask(set: &VertexSet) -> u64 {
    set.iter().fold(0, |m, &v| m | 1 << v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(sets: &[&[usize]]) -> Vec<VertexSet> {
        sets.iter().map(|s| s.iter().copied().collect()).collect()
    }

    #[test]
    fn minimize_examples() {
        let m = minimize(fam(&[&[1, 2], &[1, 2, 3], &[4]]));
        assert_eq!(m, fam(&[&[1, 2], &[4]]).into_iter().collect());
        assert!(minimize(Vec::new()).is_empty());
        assert_eq!(minimize_masks([0b110, 0b1110, 0b10000, 0b110]), vec![0b10000, 0b110]);
    }

    #[test]
    fn no_cloning_examples() {
        let disjoint = AccessStructure::new(vec![1, 2], fam(&[&[1], &[2]]));
        assert!(!check_no_cloning(&disjoint));
        let single = AccessStructure::new(vec![1, 2], fam(&[&[1, 2]]));
        assert!(check_no_cloning(&single));
    }

    #[test]
    fn relabel_and_membership() {
        let acc = AccessStructure::new(vec![0, 1, 2], fam(&[&[0, 2]]));
        let moved = acc.relabel(|p| p + 1);
        assert_eq!(moved.players, vec![1, 2, 3]);
        assert_eq!(moved.to_vecs(), vec![vec![1, 3]]);
        assert!(moved.is_authorized(&[1, 2, 3].into_iter().collect()));
        assert!(!moved.is_authorized(&[1, 2].into_iter().collect()));
    }
}
