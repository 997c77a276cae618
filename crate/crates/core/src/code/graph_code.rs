use super::{CodeError, StabilizerCode, StandardFormCode};
use crate::gf2::{BitMatrix, BitVector, PauliOperator};
use crate::graph::{Graph, VertexSet};

/// Builds the graph `(G, A)` equivalent to a standard-form code: adjacency
/// `[[B + C·A2ᵗ, A1, A2], [A1ᵗ, 0, 0], [A2ᵗ, 0, 0]]` and `A = supp(Cᵗ, Eᵗ, 1)`.
pub fn code_to_graph(std: &StandardFormCode) -> (Graph, VertexSet) {
    let (n, r) = (std.n, std.r);
    let top = std.b_plus_c_a2t().hstack(&std.a1).hstack(&std.a2);
    let right = top.submatrix(&(0..r).collect::<Vec<_>>(), &(r..n).collect::<Vec<_>>());
    let bottom = right
        .transpose()
        .hstack(&BitMatrix::zeros(n - r, n - r));
    let adjacency = top.vstack(&bottom);
    let graph = Graph::from_adjacency(adjacency)
        .expect("standard form has a symmetric, zero-diagonal adjacency");
    let a_vec = std
        .c
        .column(0)
        .concat(&std.e.column(0))
        .concat(&BitVector::ones(1));
    (graph, a_vec.iter_ones().collect())
}

/// The `[[n,1]]` code spanned by `|G⟩` and `Z_A|G⟩`.
///
/// Generators are `K_v` for `v ∉ A` and `K_{a0}·K_a` for `a ∈ A ∖ {a0}` with
/// `a0 = min A`. The logical X is `Z_A` (it flips between the two basis
/// states) and the logical Z is `K_{a0}`, so the encoded-Z coset is
/// `{K_D : |D ∩ A| odd}`.
pub fn graph_to_code(graph: &Graph, a: &VertexSet) -> Result<StabilizerCode, CodeError> {
    let n = graph.n();
    let &a0 = a.iter().next().ok_or(CodeError::EmptyEncodingSet)?;
    if let Some(&v) = a.iter().find(|&&v| v >= n) {
        return Err(CodeError::VertexOutOfRange(v));
    }
    let pivot = graph.stabilizer(a0);
    let generators = (0..n)
        .filter(|&v| v != a0)
        .map(|v| {
            let k = graph.stabilizer(v);
            if a.contains(&v) {
                k.mul(&pivot)
            } else {
                k
            }
        })
        .collect();
    let z_a = PauliOperator::hermitian(BitVector::zeros(n), graph.indicator(a));
    StabilizerCode::new(n, generators)?.with_logicals(z_a, pivot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{
        five_qubit_code, logical_z_coset, random_code, standard_form, same_group,
    };
    use crate::graph::example_graph;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn empty_code_gives_single_vertex() {
        let c = StabilizerCode::new(1, vec![]).unwrap();
        let (g, a) = code_to_graph(&standard_form(&c).unwrap());
        assert_eq!(g.n(), 1);
        assert_eq!(a, set(&[0]));
    }

    #[test]
    fn trivial_blocks_give_isolated_vertices() {
        // r = 1 with A1 = A2 = 0: vertex 0 isolated from the rest
        let c = StabilizerCode::new(3, vec!["XII".parse().unwrap(), "IZI".parse().unwrap()]).unwrap();
        let std = standard_form(&c).unwrap();
        assert!(std.a1.is_zero() && std.a2.is_zero());
        let (g, a) = code_to_graph(&std);
        assert!(g.edges().is_empty());
        assert_eq!(a, set(&[2]));
    }

    #[test]
    fn path_graph_code() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let code = graph_to_code(&g, &set(&[1])).unwrap();
        let gens: Vec<String> = code.generators().iter().map(|p| p.to_string()).collect();
        assert_eq!(gens, ["+XZI", "+IZX"]);
        assert_eq!(code.logical_x().unwrap().to_string(), "+IZI");
        assert_eq!(code.logical_z().unwrap().to_string(), "+ZXZ");
        // encoded-Z coset is K_D with 1 ∈ D: K1, K0K1, K1K2, K0K1K2
        let supports: Vec<VertexSet> = logical_z_coset(&code)
            .unwrap()
            .map(|p| p.support().iter_ones().collect())
            .collect();
        assert_eq!(supports.len(), 4);
        assert!(supports.iter().all(|s| s == &set(&[0, 1, 2])));
    }

    #[test]
    fn k2_code() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let code = graph_to_code(&g, &set(&[1])).unwrap();
        assert_eq!(code.generators().len(), 1);
        assert_eq!(code.generators()[0].to_string(), "+XZ");
        assert_eq!(code.logical_x().unwrap().to_string(), "+IZ");
        assert_eq!(code.logical_z().unwrap().to_string(), "+ZX");
    }

    #[test]
    fn errors() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(graph_to_code(&g, &set(&[])), Err(CodeError::EmptyEncodingSet));
        assert_eq!(graph_to_code(&g, &set(&[5])), Err(CodeError::VertexOutOfRange(5)));
    }

    #[test]
    fn generators_span_even_overlap_subgroup() {
        // brute force over all 2^n products K_D on the eight-vertex example graph
        let g = example_graph();
        let a = set(&[4, 5, 7]);
        let code = graph_to_code(&g, &a).unwrap();
        assert_eq!(code.generators().len(), 7);
        let z_a = code.logical_x().unwrap();
        let even: Vec<PauliOperator> = (0u64..1 << 8)
            .map(|m| g.stabilizer_product(&BitVector::from_mask(8, m).iter_ones().collect()))
            .filter(|k| k.commutes(z_a))
            .collect();
        assert_eq!(even.len(), 128);
        let m = crate::code::symplectic_matrix(8, &even);
        assert_eq!(m.rank(), 7);
        assert_eq!(
            m.row_space_canonical(),
            code.symplectic_matrix().row_space_canonical()
        );
    }

    fn check_round_trip(code: &StabilizerCode) {
        let std = standard_form(code).unwrap();
        let (g, a) = code_to_graph(&std);
        assert!(g.adjacency().is_symmetric());
        let graph_code = graph_to_code(&g, &a).unwrap();
        let replay: Vec<PauliOperator> = code
            .generators()
            .iter()
            .map(|p| std.transform_to_graph(p))
            .collect();
        assert!(same_group(code.n(), &replay, graph_code.n(), graph_code.generators()));
        // the standard-form logical Z lands on the graph code's encoded Z coset
        let mut lz = std.logical_z();
        for h in std.graph_hadamards() {
            h.apply(&mut lz);
        }
        let lz_graph = graph_code.logical_z().unwrap();
        let mut gens = graph_code.generators().to_vec();
        gens.push(lz_graph.clone());
        assert!(crate::code::group_sign(&gens, &lz).is_some());
    }

    #[test]
    fn five_qubit_round_trip() {
        check_round_trip(&five_qubit_code());
    }

    #[test]
    fn random_round_trips() {
        for seed in 0..50 {
            check_round_trip(&random_code(1 + seed as usize % 10, 1000 + seed));
        }
    }
}
