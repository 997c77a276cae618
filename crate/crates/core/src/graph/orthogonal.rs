use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::Graph;
use crate::gf2::{BitMatrix, BitVector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrthogonalityError {
    #[error("biadjacency matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("P·Pᵗ differs from the identity at entry ({row}, {col})")]
    NotOrthogonal { row: usize, col: usize },
}

/// Checks `P·Pᵗ = I` over GF(2).
pub fn check_orthogonal(p: &BitMatrix) -> Result<(), OrthogonalityError> {
    if !p.is_square() {
        return Err(OrthogonalityError::NotSquare {
            rows: p.rows(),
            cols: p.cols(),
        });
    }
    let k = p.rows();
    for i in 0..k {
        for j in 0..k {
            if p.row(i).dot(p.row(j)) != (i == j) {
                return Err(OrthogonalityError::NotOrthogonal { row: i, col: j });
            }
        }
    }
    Ok(())
}

pub fn is_orthogonal(p: &BitMatrix) -> bool {
    check_orthogonal(p).is_ok()
}

/// Bipartite graph `[[0, P], [Pᵗ, 0]]` on `2k` vertices: left part `0..k`,
/// right part `k..2k`.
pub fn bipartite_from_biadjacency(p: &BitMatrix) -> Graph {
    let (k, m) = (p.rows(), p.cols());
    let mut g = Graph::empty(k + m);
    for i in 0..k {
        for j in p.row(i).iter_ones() {
            g.add_edge(i, k + j).expect("biadjacency edges are simple");
        }
    }
    g
}

/// Random bipartite graph on `2k` vertices whose biadjacency `P` satisfies
/// `P·Pᵗ = I`. Deterministic for a given seed.
///
/// `P` is a random permutation matrix multiplied by random reflections
/// `I + vᵗv` with `v` of even weight; each reflection is a symmetric involution
/// and therefore orthogonal.
///
/// # Panics
/// Panics if `k == 0`.
pub fn random_orthogonal_graph(k: usize, seed: u64) -> Graph {
    bipartite_from_biadjacency(&random_orthogonal_matrix(k, seed))
}

pub fn random_orthogonal_matrix(k: usize, seed: u64) -> BitMatrix {
    assert!(k >= 1, "k must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = random_permutation(k, &mut rng);
    if k >= 2 {
        let factors = rng.gen_range(0..=2 * k);
        for _ in 0..factors {
            let v = random_even_vector(k, &mut rng);
            if v.is_zero() {
                continue;
            }
            // P ← P·(I + vᵗv): each row r gains (r·v)·v
            for i in 0..k {
                if p.row(i).dot(&v) {
                    p.row_mut(i).xor_assign(&v);
                }
            }
        }
        let q = random_permutation(k, &mut rng);
        p = q.mul(&p);
    }
    debug_assert!(is_orthogonal(&p));
    p
}

fn random_permutation(k: usize, rng: &mut ChaCha8Rng) -> BitMatrix {
    let mut perm: Vec<usize> = (0..k).collect();
    perm.shuffle(rng);
    BitMatrix::from_rows(k, perm.iter().map(|&c| BitVector::unit(k, c)).collect())
}

fn random_even_vector(k: usize, rng: &mut ChaCha8Rng) -> BitVector {
    let mut v = BitVector::from_bools(&(0..k).map(|_| rng.gen::<bool>()).collect::<Vec<_>>());
    if v.weight() % 2 == 1 {
        let i = rng.gen_range(0..k);
        v.flip(i);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{example_graph, VertexSet};
    use rand::Rng;

    #[test]
    fn orthogonality_examples() {
        assert!(is_orthogonal(&BitMatrix::identity(4)));
        let p = example_graph().bipartition().unwrap().biadjacency;
        // rows 1101, 0111, 1011, 1110: each has weight 3, pairwise overlaps 2
        assert!(is_orthogonal(&p));
        assert_eq!(
            check_orthogonal(&BitMatrix::from_strs(&["11", "11"])),
            Err(OrthogonalityError::NotOrthogonal { row: 0, col: 0 })
        );
        assert_eq!(
            check_orthogonal(&BitMatrix::from_strs(&["110", "011"])),
            Err(OrthogonalityError::NotSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn generator_small_cases() {
        let g = random_orthogonal_graph(1, 5);
        assert_eq!(g, Graph::from_edges(2, &[(0, 1)]).unwrap());
        for seed in 0..50 {
            let g = random_orthogonal_graph(4, seed);
            let b = g.bipartition().unwrap();
            assert!(is_orthogonal(&b.biadjacency), "seed {seed}");
        }
    }

    #[test]
    fn permutation_gives_perfect_matching() {
        let p = BitMatrix::from_strs(&["010", "001", "100"]);
        let g = bipartite_from_biadjacency(&p);
        assert_eq!(g.edges().len(), 3);
        assert!((0..6).all(|v| g.degree(v) == 1));
    }

    #[test]
    fn generator_is_deterministic_and_varied() {
        assert_eq!(random_orthogonal_graph(6, 42), random_orthogonal_graph(6, 42));
        let distinct: std::collections::HashSet<_> =
            (0..40).map(|s| random_orthogonal_matrix(5, s)).collect();
        assert!(distinct.len() > 10);
        // not only permutation matrices
        assert!(distinct.iter().any(|p| p.iter_rows().any(|r| r.weight() > 1)));
    }

    #[test]
    fn orthogonal_rows_have_odd_weight() {
        for seed in 0..100 {
            let p = random_orthogonal_matrix(1 + (seed as usize % 10), seed);
            assert!(p.iter_rows().all(|r| r.weight() % 2 == 1));
        }
    }

    #[test]
    fn odd_neighborhood_involution_within_a_part() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for trial in 0..200 {
            let k = rng.gen_range(1..=10);
            let g = random_orthogonal_graph(k, trial);
            let left_side = rng.gen::<bool>();
            let part: Vec<usize> = if left_side { (0..k).collect() } else { (k..2 * k).collect() };
            let d: VertexSet = part.iter().copied().filter(|_| rng.gen::<bool>()).collect();
            let odd = g.odd_neighborhood(&d);
            assert_eq!(g.odd_neighborhood(&odd), d);
            for &i in part.iter().filter(|i| !d.contains(i)) {
                assert_eq!(odd.intersection(&g.neighbors(i)).count() % 2, 0);
            }
        }
    }

    #[test]
    fn involution_needs_orthogonality() {
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let d: VertexSet = [0].into_iter().collect();
        assert_ne!(path.odd_neighborhood(&path.odd_neighborhood(&d)), d);
    }
}
