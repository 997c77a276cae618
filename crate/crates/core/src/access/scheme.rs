use super::{minimize_masks, AccessError, AccessStructure};
use crate::code::{graph_to_code, logical_z_coset_with_cap, CodeError, StabilizerCode, DEFAULT_ENUMERATION_CAP};
use crate::gf2::{BitMatrix, BitVector};
use crate::graph::{check_orthogonal, Bipartition, Graph, VertexDeletion, VertexSet};

/// A classical secret shared as `Z_A^s|G⟩`; each vertex is one player.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CcScheme {
    graph: Graph,
    a: VertexSet,
    labels: Vec<usize>,
}

impl CcScheme {
    pub fn new(graph: Graph, a: VertexSet) -> Result<Self, AccessError> {
        if a.is_empty() {
            return Err(AccessError::EmptyEncodingSet);
        }
        let n = graph.n();
        if let Some(&v) = a.iter().find(|&&v| v >= n) {
            return Err(AccessError::VertexOutOfRange { vertex: v, n });
        }
        Ok(Self {
            graph,
            a,
            labels: (0..n).collect(),
        })
    }

    /// Attaches external player labels; vertex `v` is reported as `labels[v]`.
    ///
    /// # Panics
    /// If the label count differs from the vertex count.
    pub fn with_labels(mut self, labels: Vec<usize>) -> Self {
        assert_eq!(labels.len(), self.graph.n(), "one label per vertex");
        self.labels = labels;
        self
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn a(&self) -> &VertexSet {
        &self.a
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn player_count(&self) -> usize {
        self.graph.n()
    }

    /// Vertex indices to player labels.
    pub fn to_labels(&self, set: &VertexSet) -> VertexSet {
        set.iter().map(|&v| self.labels[v]).collect()
    }

    /// Player labels to vertex indices.
    pub fn from_labels(&self, set: &VertexSet) -> Result<VertexSet, AccessError> {
        set.iter()
            .map(|p| {
                self.labels
                    .iter()
                    .position(|l| l == p)
                    .ok_or(AccessError::UnknownPlayer(*p))
            })
            .collect()
    }

    /// The `[[n,1]]` code spanned by `|G⟩` and `Z_A|G⟩`.
    pub fn to_code(&self) -> StabilizerCode {
        graph_to_code(&self.graph, &self.a).expect("scheme invariants make a valid code")
    }
}

/// A quantum secret held by a dealer vertex of a bipartite graph whose
/// biadjacency matrix is orthogonal; the shares are the other vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QqScheme {
    graph: Graph,
    dealer: usize,
    bipartition: Bipartition,
    deletion: VertexDeletion,
    share: CcScheme,
}

impl QqScheme {
    pub fn new(graph: Graph, dealer: usize) -> Result<Self, AccessError> {
        let n = graph.n();
        if dealer >= n {
            return Err(AccessError::VertexOutOfRange { vertex: dealer, n });
        }
        let bipartition = graph.bipartition().ok_or(AccessError::NotBipartite)?;
        check_orthogonal(&bipartition.biadjacency)?;
        let deletion = graph.delete_vertex(dealer);
        let a = deletion
            .set_to_new(&graph.neighbors(dealer))
            .expect("no self loops");
        let share = CcScheme::new(deletion.graph.clone(), a)?
            .with_labels(deletion.new_to_old.clone());
        Ok(Self {
            graph,
            dealer,
            bipartition,
            deletion,
            share,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn dealer(&self) -> usize {
        self.dealer
    }

    pub fn bipartition(&self) -> &Bipartition {
        &self.bipartition
    }

    pub fn deletion(&self) -> &VertexDeletion {
        &self.deletion
    }

    /// The CC scheme `(G∖i, N_i)` with players labelled by original vertex.
    pub fn share_scheme(&self) -> &CcScheme {
        &self.share
    }

    /// `N_i` in original labels.
    pub fn dealer_neighbors(&self) -> VertexSet {
        self.graph.neighbors(self.dealer)
    }

    /// The part not containing the dealer; recovery sets `D` live here.
    pub fn recovery_part(&self) -> &[usize] {
        self.bipartition.other_part(self.dealer)
    }

    /// Player labels (original vertices other than the dealer).
    pub fn players(&self) -> &[usize] {
        &self.deletion.new_to_old
    }
}

fn index_vec(set: &VertexSet) -> Vec<usize> {
    set.iter().copied().collect()
}

/// A set `D ⊆ S` with `Odd(D) ⊆ S` and `|D ∩ A|` odd, if one exists.
///
/// Solves `A_G[V∖S, S]·x = 0`, `χ_A[S]·x = 1`; the witness is `supp(x)` for
/// the particular solution with free variables set to zero.
pub fn authorized_witness(scheme: &CcScheme, s: &VertexSet) -> Option<VertexSet> {
    let g = scheme.graph();
    let n = g.n();
    let cols = index_vec(s);
    let mut rows: Vec<BitVector> = (0..n)
        .filter(|v| !s.contains(v))
        .map(|v| g.neighbor_row(v).select(&cols))
        .collect();
    let zeros = rows.len();
    rows.push(g.indicator(scheme.a()).select(&cols));
    let m = BitMatrix::from_rows(cols.len(), rows);
    let mut rhs = BitVector::zeros(zeros + 1);
    rhs.set(zeros, true);
    let sol = m.solve(&rhs)?;
    Some(sol.particular.iter_ones().map(|j| cols[j]).collect())
}

/// A set `K ⊆ V∖S` with `Odd(K) ∩ S = A ∩ S`, if one exists.
///
/// Solves `A_G[S, V∖S]·y = χ_{A∩S}`.
pub fn unauthorized_witness(scheme: &CcScheme, s: &VertexSet) -> Option<VertexSet> {
    let g = scheme.graph();
    let n = g.n();
    let cols: Vec<usize> = (0..n).filter(|v| !s.contains(v)).collect();
    let rows_idx = index_vec(s);
    let rows: Vec<BitVector> = rows_idx
        .iter()
        .map(|&v| g.neighbor_row(v).select(&cols))
        .collect();
    let m = BitMatrix::from_rows(cols.len(), rows);
    let rhs = BitVector::from_bools(&rows_idx.iter().map(|v| scheme.a().contains(v)).collect::<Vec<_>>());
    let sol = m.solve(&rhs)?;
    Some(sol.particular.iter_ones().map(|j| cols[j]).collect())
}

/// A recovery set for the QQ circuit: `D ⊆ S ∩ V_r` (original labels) with
/// `|D ∩ N_i|` odd and `Odd(D) ∖ {i} ⊆ S`, if one exists.
pub fn qq_recovery_witness(scheme: &QqScheme, s: &VertexSet) -> Option<VertexSet> {
    let g = scheme.graph();
    let dealer = scheme.dealer();
    let cols: Vec<usize> = scheme
        .recovery_part()
        .iter()
        .copied()
        .filter(|v| s.contains(v))
        .collect();
    let mut rows: Vec<BitVector> = (0..g.n())
        .filter(|v| *v != dealer && !s.contains(v))
        .map(|v| g.neighbor_row(v).select(&cols))
        .collect();
    let zeros = rows.len();
    rows.push(g.neighbor_row(dealer).select(&cols));
    let m = BitMatrix::from_rows(cols.len(), rows);
    let mut rhs = BitVector::zeros(zeros + 1);
    rhs.set(zeros, true);
    let sol = m.solve(&rhs)?;
    Some(sol.particular.iter_ones().map(|j| cols[j]).collect())
}

/// Checks a decoding witness by direct substitution.
pub fn validate_authorized_witness(scheme: &CcScheme, s: &VertexSet, d: &VertexSet) -> bool {
    d.is_subset(s)
        && scheme.graph().odd_neighborhood(d).is_subset(s)
        && d.intersection(scheme.a()).count() % 2 == 1
}

/// Checks a blocking witness by direct substitution.
pub fn validate_unauthorized_witness(scheme: &CcScheme, s: &VertexSet, k: &VertexSet) -> bool {
    let odd = scheme.graph().odd_neighborhood(k);
    k.is_disjoint(s)
        && odd.intersection(s).eq(scheme.a().intersection(s))
}

/// Minimal supports of the encoded Z operators of the scheme's code.
pub fn cc_generators(scheme: &CcScheme) -> Result<AccessStructure, AccessError> {
    cc_generators_with_cap(scheme, DEFAULT_ENUMERATION_CAP)
}

pub fn cc_generators_with_cap(scheme: &CcScheme, cap: usize) -> Result<AccessStructure, AccessError> {
    let n = scheme.player_count();
    let coset = match logical_z_coset_with_cap(&scheme.to_code(), cap.min(63)) {
        Ok(c) => c,
        Err(CodeError::CapExceeded { cap, .. }) => {
            return Err(AccessError::CapExceeded {
                method: "generators",
                players: n,
                cap,
            })
        }
        Err(e) => return Err(e.into()),
    };
    let masks = minimize_masks(coset.map(|op| op.support().to_mask()));
    Ok(masks_to_structure(scheme.labels(), &masks))
}

fn masks_to_structure(labels: &[usize], masks: &[u64]) -> AccessStructure {
    AccessStructure::new(
        labels.to_vec(),
        masks.iter().map(|&m| {
            super::mask_to_set(m)
                .into_iter()
                .map(|v| labels[v])
                .collect()
        }),
    )
}

/// Minimal sets `D ∪ Odd(D) ∖ {i}` over `D` in the non-dealer part with
/// `|D ∩ N_i|` odd, in original vertex labels.
pub fn qq_generators(scheme: &QqScheme) -> Result<AccessStructure, AccessError> {
    qq_generators_with_cap(scheme, DEFAULT_ENUMERATION_CAP)
}

pub fn qq_generators_with_cap(scheme: &QqScheme, cap: usize) -> Result<AccessStructure, AccessError> {
    let g = scheme.graph();
    let part = scheme.recovery_part();
    let cap = cap.min(63);
    if part.len() > cap || g.n() > 64 {
        return Err(AccessError::CapExceeded {
            method: "generators",
            players: g.n() - 1,
            cap,
        });
    }
    let neighbor_masks: Vec<u64> = (0..g.n()).map(|v| g.neighbor_row(v).to_mask()).collect();
    let dealer = scheme.dealer();
    let ni = neighbor_masks[dealer];
    let mut family = Vec::new();
    for sub in 1u64..1 << part.len() {
        let d: u64 = part
            .iter()
            .enumerate()
            .filter(|(b, _)| sub >> b & 1 == 1)
            .fold(0, |m, (_, &v)| m | 1 << v);
        if (d & ni).count_ones().is_multiple_of(2) {
            continue;
        }
        let odd = part
            .iter()
            .filter(|&&v| d >> v & 1 == 1)
            .fold(0, |m, &v| m ^ neighbor_masks[v]);
        family.push((d | odd) & !(1 << dealer));
    }
    let masks = minimize_masks(family);
    let labels: Vec<usize> = (0..g.n()).collect();
    let mut acc = masks_to_structure(&labels, &masks);
    acc.players = scheme.players().to_vec();
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::example_graph;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn example8_share() -> CcScheme {
        QqScheme::new(example_graph(), 0).unwrap().share_scheme().clone()
    }

    /// Deciders on a scheme whose players are labelled by original vertex.
    fn decide(s: &CcScheme, labels: &[usize]) -> (Option<VertexSet>, Option<VertexSet>) {
        let idx = s.from_labels(&set(labels)).unwrap();
        (
            authorized_witness(s, &idx).map(|d| s.to_labels(&d)),
            unauthorized_witness(s, &idx).map(|k| s.to_labels(&k)),
        )
    }

    #[test]
    fn authorized_examples() {
        let s = example8_share();
        assert_eq!(decide(&s, &[2, 3, 4]), (Some(set(&[4])), None));
        assert_eq!(decide(&s, &[4, 5, 7]).0, Some(set(&[4, 5, 7])));
        let all = set(&(0..7).collect::<Vec<_>>());
        assert!(authorized_witness(&s, &all).is_some());
        assert!(unauthorized_witness(&s, &all).is_none());
    }

    #[test]
    fn unauthorized_examples() {
        let s = example8_share();
        assert_eq!(decide(&s, &[1, 2, 3]), (None, Some(set(&[]))));
        assert_eq!(decide(&s, &[4, 5, 6]), (None, Some(set(&[1, 2]))));
        assert_eq!(unauthorized_witness(&s, &set(&[])), Some(set(&[])));
        assert_eq!(authorized_witness(&s, &set(&[])), None);
    }

    #[test]
    fn k2_scheme() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let s = CcScheme::new(g, set(&[1])).unwrap();
        assert_eq!(authorized_witness(&s, &set(&[0, 1])), Some(set(&[1])));
        for sub in [set(&[]), set(&[0]), set(&[1])] {
            assert!(authorized_witness(&s, &sub).is_none());
            let k = unauthorized_witness(&s, &sub).unwrap();
            assert!(validate_unauthorized_witness(&s, &sub, &k));
        }
        assert_eq!(cc_generators(&s).unwrap().to_vecs(), vec![vec![0, 1]]);
    }

    #[test]
    fn path_scheme() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let s = CcScheme::new(g, set(&[1])).unwrap();
        assert_eq!(cc_generators(&s).unwrap().to_vecs(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn example8_generators() {
        let expected: Vec<Vec<usize>> = vec![
            vec![1, 2, 7],
            vec![1, 3, 5],
            vec![1, 4, 6],
            vec![2, 3, 4],
            vec![2, 5, 6],
            vec![3, 6, 7],
            vec![4, 5, 7],
        ];
        let q = QqScheme::new(example_graph(), 0).unwrap();
        assert_eq!(qq_generators(&q).unwrap().to_vecs(), expected);
        assert_eq!(cc_generators(q.share_scheme()).unwrap().to_vecs(), expected);
        assert_eq!(qq_generators(&q).unwrap().players, vec![1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn small_qq_examples() {
        let k2 = QqScheme::new(Graph::from_edges(2, &[(0, 1)]).unwrap(), 0).unwrap();
        assert_eq!(qq_generators(&k2).unwrap().to_vecs(), vec![vec![1]]);
        let matching =
            crate::graph::bipartite_from_biadjacency(&BitMatrix::identity(3));
        let q = QqScheme::new(matching, 0).unwrap();
        assert_eq!(qq_generators(&q).unwrap().to_vecs(), vec![vec![3]]);
    }

    #[test]
    fn qq_recovery_witnesses() {
        let q = QqScheme::new(example_graph(), 0).unwrap();
        assert_eq!(qq_recovery_witness(&q, &set(&[2, 3, 4])), Some(set(&[4])));
        assert_eq!(qq_recovery_witness(&q, &set(&[1, 2, 3])), None);
        // {1,3,5} is reached only through D = {5} in the non-dealer part
        assert_eq!(qq_recovery_witness(&q, &set(&[1, 3, 5])), Some(set(&[5])));
        for mask in 0u32..128 {
            let s: VertexSet = (0..7).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
            let share = q.share_scheme();
            let idx = share.from_labels(&s).unwrap();
            let authorized = authorized_witness(share, &idx).is_some();
            let d = qq_recovery_witness(&q, &s);
            assert_eq!(d.is_some(), authorized, "{s:?}");
            if let Some(d) = d {
                let mut reach = q.graph().odd_neighborhood(&d);
                reach.remove(&0);
                assert!(d.is_subset(&s) && reach.is_subset(&s));
            }
        }
    }

    #[test]
    fn qq_rejects_bad_graphs() {
        let triangle = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(QqScheme::new(triangle, 0), Err(AccessError::NotBipartite));
        let mut g = example_graph();
        g.remove_edge(0, 4);
        assert!(matches!(QqScheme::new(g, 0), Err(AccessError::Orthogonality(_))));
        assert!(matches!(
            QqScheme::new(example_graph(), 8),
            Err(AccessError::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn cc_scheme_validation() {
        let g = Graph::empty(2);
        assert_eq!(CcScheme::new(g.clone(), set(&[])), Err(AccessError::EmptyEncodingSet));
        assert!(CcScheme::new(g, set(&[2])).is_err());
    }

    #[test]
    fn generator_cap() {
        let s = CcScheme::new(Graph::empty(5), set(&[0])).unwrap();
        assert!(matches!(
            cc_generators_with_cap(&s, 3),
            Err(AccessError::CapExceeded { method: "generators", .. })
        ));
    }
}
