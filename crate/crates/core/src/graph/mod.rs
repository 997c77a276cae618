//! Simple undirected graphs over GF(2) adjacency matrices: odd neighbourhoods,
//! bipartitions, vertex deletion, and orthogonal biadjacency checks.

mod io;
mod orthogonal;

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::gf2::{BitMatrix, BitVector, PauliOperator};

pub use io::{parse_edge_list, serialize_edge_list, to_dot, ParseError, ParseErrorKind};
pub use orthogonal::{
    bipartite_from_biadjacency, check_orthogonal, is_orthogonal, random_orthogonal_graph,
    random_orthogonal_matrix, OrthogonalityError,
};

/// A set of vertex indices.
pub type VertexSet = BTreeSet<usize>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("adjacency matrix must be square, symmetric and zero on the diagonal")]
    InvalidAdjacency,
}

/// Simple undirected graph with a symmetric, zero-diagonal adjacency matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    adjacency: BitMatrix,
}

impl Graph {
    /// Graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Self {
        Self {
            adjacency: BitMatrix::zeros(n, n),
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn from_adjacency(adjacency: BitMatrix) -> Result<Self, GraphError> {
        let n = adjacency.rows();
        if !adjacency.is_symmetric() || (0..n).any(|v| adjacency.get(v, v)) {
            return Err(GraphError::InvalidAdjacency);
        }
        Ok(Self { adjacency })
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adjacency.set(u, v, true);
        self.adjacency.set(v, u, true);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adjacency.set(u, v, false);
        self.adjacency.set(v, u, false);
    }

    pub fn n(&self) -> usize {
        self.adjacency.rows()
    }

    pub fn adjacency(&self) -> &BitMatrix {
        &self.adjacency
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency.get(u, v)
    }

    /// Neighbourhood `N_v` as an indicator row.
    pub fn neighbor_row(&self, v: usize) -> &BitVector {
        self.adjacency.row(v)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adjacency.row(v).iter_ones().collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency.row(v).weight()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|u| {
                self.adjacency
                    .row(u)
                    .iter_ones()
                    .filter(move |&v| v > u)
                    .map(move |v| (u, v))
            })
            .collect()
    }

    /// Indicator vector of a vertex set.
    ///
    /// # Panics
    /// Panics if a vertex is out of range.
    pub fn indicator(&self, set: &VertexSet) -> BitVector {
        for &v in set {
            assert!(v < self.n(), "vertex {v} out of range (n={})", self.n());
        }
        BitVector::from_support(self.n(), set.iter().copied())
    }

    /// `Odd(D)`: vertices with an odd number of neighbours in `D`, as an
    /// indicator (`χ_D · adjacency`).
    pub fn odd_neighborhood_vec(&self, d: &BitVector) -> BitVector {
        self.adjacency.vec_mul(d)
    }

    /// `Odd(D) = {v : |N_v ∩ D| odd}`.
    ///
    /// # Panics
    /// Panics if `D` contains a vertex outside the graph.
    pub fn odd_neighborhood(&self, d: &VertexSet) -> VertexSet {
        self.odd_neighborhood_vec(&self.indicator(d))
            .iter_ones()
            .collect()
    }

    /// Graph-state stabilizer generator `K_v = X_v ∏_{u∈N_v} Z_u`.
    pub fn stabilizer(&self, v: usize) -> PauliOperator {
        PauliOperator::from_parts(
            BitVector::unit(self.n(), v),
            self.adjacency.row(v).clone(),
            0,
        )
    }

    /// `K_D = ∏_{j∈D} K_j`, phase tracked. Its X part is `D` and its Z part is `Odd(D)`.
    pub fn stabilizer_product(&self, d: &VertexSet) -> PauliOperator {
        let mut k = PauliOperator::identity(self.n());
        for &v in d {
            k.mul_assign(&self.stabilizer(v));
        }
        k
    }

    /// Two-colouring with the lowest-index vertex of each connected component
    /// on the left; `None` if the graph has an odd cycle.
    pub fn bipartition(&self) -> Option<Bipartition> {
        let n = self.n();
        let mut color: Vec<Option<bool>> = vec![None; n];
        for start in 0..n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for v in self.adjacency.row(u).iter_ones() {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let left: Vec<usize> = (0..n).filter(|&v| color[v] == Some(false)).collect();
        let right: Vec<usize> = (0..n).filter(|&v| color[v] == Some(true)).collect();
        let biadjacency = self.adjacency.submatrix(&left, &right);
        Some(Bipartition {
            left,
            right,
            biadjacency,
        })
    }

    /// `G∖v`, with the surviving vertices renumbered in increasing order.
    ///
    /// # Panics
    /// Panics if `v` is out of range.
    pub fn delete_vertex(&self, v: usize) -> VertexDeletion {
        assert!(v < self.n(), "vertex {v} out of range (n={})", self.n());
        let kept: Vec<usize> = (0..self.n()).filter(|&u| u != v).collect();
        let graph = Self {
            adjacency: self.adjacency.submatrix(&kept, &kept),
        };
        VertexDeletion {
            graph,
            removed: v,
            new_to_old: kept,
        }
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n() {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        } else {
            Ok(())
        }
    }
}

/// A two-colouring of a bipartite graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    /// Rows indexed by `left`, columns by `right` (both in increasing order).
    pub biadjacency: BitMatrix,
}

impl Bipartition {
    /// The part containing `v`.
    pub fn part_of(&self, v: usize) -> &[usize] {
        if self.left.contains(&v) {
            &self.left
        } else {
            &self.right
        }
    }

    /// The part not containing `v`.
    pub fn other_part(&self, v: usize) -> &[usize] {
        if self.left.contains(&v) {
            &self.right
        } else {
            &self.left
        }
    }
}

/// Result of deleting a vertex, with the index map between old and new labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexDeletion {
    pub graph: Graph,
    pub removed: usize,
    /// `new_to_old[k]` is the original index of new vertex `k`.
    pub new_to_old: Vec<usize>,
}

impl VertexDeletion {
    pub fn old_to_new(&self, old: usize) -> Option<usize> {
        match old.cmp(&self.removed) {
            std::cmp::Ordering::Less => Some(old),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(old - 1),
        }
    }

    /// Maps a set given in original labels; `None` if it contains the removed vertex.
    pub fn set_to_new(&self, set: &VertexSet) -> Option<VertexSet> {
        set.iter().map(|&v| self.old_to_new(v)).collect()
    }

    pub fn set_to_old(&self, set: &VertexSet) -> VertexSet {
        set.iter().map(|&v| self.new_to_old[v]).collect()
    }
}

/// The bipartite graph of the worked eight-vertex example: left part
/// `{0,1,2,3}`, right part `{4,5,6,7}`, twelve edges, orthogonal biadjacency.
pub fn example_graph() -> Graph {
    Graph::from_edges(
        8,
        &[
            (0, 4),
            (0, 5),
            (0, 7),
            (1, 5),
            (1, 6),
            (1, 7),
            (2, 4),
            (2, 6),
            (2, 7),
            (3, 4),
            (3, 5),
            (3, 6),
        ],
    )
    .expect("static edge list is valid")
}


#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn odd_neighborhood_examples() {
        let g = example_graph();
        assert_eq!(g.odd_neighborhood(&s(&[])), s(&[]));
        assert_eq!(g.odd_neighborhood(&s(&[4])), s(&[0, 2, 3]));
        // N4 Δ N5 = {0,2,3} Δ {0,1,3}
        assert_eq!(g.odd_neighborhood(&s(&[4, 5])), s(&[1, 2]));
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn odd_neighborhood_out_of_range() {
        example_graph().odd_neighborhood(&s(&[8]));
    }

    #[test]
    fn bipartition_examples() {
        let triangle = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(triangle.bipartition().is_none());

        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let b = k2.bipartition().unwrap();
        assert_eq!(b.left, vec![0]);
        assert_eq!(b.right, vec![1]);
        assert_eq!(b.biadjacency, BitMatrix::from_strs(&["1"]));

        let b = example_graph().bipartition().unwrap();
        assert_eq!(b.left, vec![0, 1, 2, 3]);
        assert_eq!(b.right, vec![4, 5, 6, 7]);
        assert_eq!(
            b.biadjacency,
            BitMatrix::from_strs(&["1101", "0111", "1011", "1110"])
        );
    }

    #[test]
    fn bipartition_per_component() {
        // components {0,3} and {1,2}: lowest vertex of each goes left
        let g = Graph::from_edges(4, &[(3, 0), (2, 1)]).unwrap();
        let b = g.bipartition().unwrap();
        assert_eq!(b.left, vec![0, 1]);
        assert_eq!(b.right, vec![2, 3]);
    }

    #[test]
    fn delete_vertex_examples() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let d = k2.delete_vertex(1);
        assert_eq!(d.graph, Graph::empty(1));

        let d = example_graph().delete_vertex(0);
        assert_eq!(d.graph.n(), 7);
        let n7 = d.graph.neighbors(d.old_to_new(7).unwrap());
        assert_eq!(d.set_to_old(&n7), s(&[1, 2]));
        assert_eq!(d.old_to_new(0), None);
        assert_eq!(d.new_to_old, vec![1, 2, 3, 4, 5, 6, 7]);

        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.delete_vertex(1).graph, Graph::empty(2));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Graph::from_edges(2, &[(0, 0)]),
            Err(GraphError::SelfLoop(0))
        );
        assert_eq!(
            Graph::from_edges(2, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        ));
        assert_eq!(
            Graph::from_adjacency(BitMatrix::from_strs(&["01", "00"])),
            Err(GraphError::InvalidAdjacency)
        );
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
                let mut g = Graph::empty(n);
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[u * n + v] {
                            g.add_edge(u, v).unwrap();
                        }
                    }
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn odd_neighborhood_is_linear(g in arb_graph(12), a in any::<u64>(), b in any::<u64>()) {
            let n = g.n();
            let da: VertexSet = (0..n).filter(|&v| a >> v & 1 == 1).collect();
            let db: VertexSet = (0..n).filter(|&v| b >> v & 1 == 1).collect();
            let sym: VertexSet = da.symmetric_difference(&db).copied().collect();
            let lhs = g.odd_neighborhood(&sym);
            let rhs: VertexSet = g
                .odd_neighborhood(&da)
                .symmetric_difference(&g.odd_neighborhood(&db))
                .copied()
                .collect();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn odd_neighborhood_matches_definition(g in arb_graph(10), a in any::<u64>()) {
            let n = g.n();
            let d: VertexSet = (0..n).filter(|&v| a >> v & 1 == 1).collect();
            let expected: VertexSet = (0..n)
                .filter(|&v| g.neighbors(v).intersection(&d).count() % 2 == 1)
                .collect();
            prop_assert_eq!(g.odd_neighborhood(&d), expected);
        }

        #[test]
        fn bipartition_is_proper(g in arb_graph(10)) {
            if let Some(b) = g.bipartition() {
                for part in [&b.left, &b.right] {
                    for &u in part.iter() {
                        for &v in part.iter() {
                            prop_assert!(!g.has_edge(u, v));
                        }
                    }
                }
                prop_assert_eq!(b.left.len() + b.right.len(), g.n());
            }
        }
    }
}
