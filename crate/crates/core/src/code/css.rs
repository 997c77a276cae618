use super::{CodeError, StabilizerCode};
use crate::gf2::{BitMatrix, BitVector, PauliOperator};
use crate::graph::check_orthogonal;

/// The `[[2k,0]]` code `[I P | 0 0; 0 0 | I P]` for an orthogonal `k × k` matrix `P`.
pub fn css_state_code(p: &BitMatrix) -> Result<StabilizerCode, CodeError> {
    check_orthogonal(p)?;
    let k = p.rows();
    StabilizerCode::new(2 * k, css_generators(p, &(0..k).collect::<Vec<_>>(), &(k..2 * k).collect::<Vec<_>>(), None))
}

/// X-type rows `X_{left[j]} X_{right[Q_j]}` followed by the matching Z-type
/// rows, skipping row `skip`.
fn css_generators(
    q: &BitMatrix,
    left: &[usize],
    right: &[usize],
    skip: Option<usize>,
) -> Vec<PauliOperator> {
    let n = left.len() + right.len();
    let support = |j: usize| {
        let mut v = BitVector::zeros(n);
        v.set(left[j], true);
        for m in q.row(j).iter_ones() {
            v.set(right[m], true);
        }
        v
    };
    let rows: Vec<usize> = (0..q.rows()).filter(|&j| Some(j) != skip).collect();
    let xs = rows
        .iter()
        .map(|&j| PauliOperator::hermitian(support(j), BitVector::zeros(n)));
    let zs = rows
        .iter()
        .map(|&j| PauliOperator::hermitian(BitVector::zeros(n), support(j)));
    xs.chain(zs).collect()
}

/// Recovers `P` from a code produced by [`css_state_code`].
fn recover_biadjacency(code: &StabilizerCode) -> Result<BitMatrix, CodeError> {
    let n = code.n();
    if !n.is_multiple_of(2) || code.generators().len() != n {
        return Err(CodeError::NotCssState(format!(
            "expected 2k generators on 2k qubits, found {} on {n}",
            code.generators().len()
        )));
    }
    let k = n / 2;
    let right: Vec<usize> = (k..n).collect();
    let rows = code.generators()[..k]
        .iter()
        .map(|g| g.x().select(&right))
        .collect();
    let p = BitMatrix::from_rows(k, rows);
    match css_state_code(&p) {
        Ok(expected) if expected.generators() == code.generators() => Ok(p),
        Ok(_) => Err(CodeError::NotCssState(
            "generators do not match [I P | 0 0; 0 0 | I P]".to_string(),
        )),
        Err(e) => Err(e),
    }
}

/// Deletes qubit `i` from a CSS state code, leaving a `[[2k−1, 1]]` code
/// whose logical operators are `X_{N_i}` and `Z_{N_i}` in the punctured
/// indexing (qubits above `i` shift down by one).
///
/// # Panics
/// If `i` is out of range.
pub fn puncture(code: &StabilizerCode, i: usize) -> Result<StabilizerCode, CodeError> {
    let n = code.n();
    assert!(i < n, "qubit {i} out of range for a code on {n} qubits");
    let p = recover_biadjacency(code)?;
    let k = n / 2;
    let (left, right, q, row): (Vec<usize>, Vec<usize>, BitMatrix, usize) = if i < k {
        ((0..k).collect(), (k..n).collect(), p, i)
    } else {
        // the row space of [I P] equals that of [Pᵗ I] since P⁻¹ = Pᵗ
        ((k..n).collect(), (0..k).collect(), p.transpose(), i - k)
    };
    let keep: Vec<usize> = (0..n).filter(|&v| v != i).collect();
    let generators = css_generators(&q, &left, &right, Some(row))
        .iter()
        .map(|g| g.restrict(&keep))
        .collect();
    let mut neighbors = BitVector::zeros(n);
    for m in q.row(row).iter_ones() {
        neighbors.set(right[m], true);
    }
    let neighbors = neighbors.select(&keep);
    let lx = PauliOperator::hermitian(neighbors.clone(), BitVector::zeros(n - 1));
    let lz = PauliOperator::hermitian(BitVector::zeros(n - 1), neighbors);
    StabilizerCode::new(n - 1, generators)?.with_logicals(lx, lz)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{graph_to_code, same_group};
    use crate::gf2::Pauli;
    use crate::graph::{bipartite_from_biadjacency, example_graph, random_orthogonal_matrix};

    fn strings(code: &StabilizerCode) -> Vec<String> {
        code.generators().iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn bell_pair() {
        let c = css_state_code(&BitMatrix::identity(1)).unwrap();
        assert_eq!(strings(&c), ["+XX", "+ZZ"]);
        assert_eq!(c.k(), 0);
    }

    #[test]
    fn three_bell_pairs() {
        let c = css_state_code(&BitMatrix::identity(3)).unwrap();
        assert_eq!(c.n(), 6);
        assert_eq!(strings(&c)[0], "+XIIXII");
        assert_eq!(strings(&c)[5], "+IIZIIZ");
    }

    #[test]
    fn non_orthogonal_rejected() {
        let p = BitMatrix::from_strs(&["11", "01"]);
        assert!(matches!(css_state_code(&p), Err(CodeError::Orthogonality(_))));
    }

    #[test]
    fn example8_state_code() {
        let g = example_graph();
        let p = g.bipartition().unwrap().biadjacency;
        let c = css_state_code(&p).unwrap();
        assert_eq!((c.n(), c.k()), (8, 0));
    }

    #[test]
    fn puncture_bell_pair() {
        let c = css_state_code(&BitMatrix::identity(1)).unwrap();
        let p = puncture(&c, 0).unwrap();
        assert_eq!((p.n(), p.k()), (1, 1));
        assert!(p.generators().is_empty());
        assert_eq!(p.logical_x().unwrap(), &PauliOperator::single(1, 0, Pauli::X));
        assert_eq!(p.logical_z().unwrap(), &PauliOperator::single(1, 0, Pauli::Z));
    }

    #[test]
    fn puncture_identity_leaves_other_pairs() {
        let c = css_state_code(&BitMatrix::identity(3)).unwrap();
        let p = puncture(&c, 0).unwrap();
        assert_eq!(strings(&p), ["+XIIXI", "+IXIIX", "+ZIIZI", "+IZIIZ"]);
        assert_eq!(p.logical_x().unwrap().to_string(), "+IIXII");
    }

    #[test]
    fn rejects_other_codes() {
        let c = crate::code::five_qubit_code();
        assert!(matches!(puncture(&c, 0), Err(CodeError::NotCssState(_))));
    }

    /// Puncturing vertex `i` matches the graph code of `G ∖ i` with
    /// `A = N_i`, after Hadamards on the part not containing `i`.
    fn check_against_graph_code(p: &BitMatrix, i: usize) {
        let g = bipartite_from_biadjacency(p);
        let punctured = puncture(&css_state_code(p).unwrap(), i).unwrap();
        let del = g.delete_vertex(i);
        let a = del.set_to_new(&g.neighbors(i)).unwrap();
        let graph_code = graph_to_code(&del.graph, &a).unwrap();
        let k = p.rows();
        let other: Vec<usize> = (0..2 * k)
            .filter(|&v| (v < k) != (i < k))
            .map(|v| del.old_to_new(v).unwrap())
            .collect();
        let hadamard = |op: &PauliOperator| {
            let mut op = op.clone();
            for &q in &other {
                op.conjugate_h(q);
            }
            op
        };
        let mapped: Vec<PauliOperator> = graph_code.generators().iter().map(hadamard).collect();
        assert!(same_group(2 * k - 1, &mapped, punctured.n(), punctured.generators()));
        assert_eq!(&hadamard(graph_code.logical_x().unwrap()), punctured.logical_x().unwrap());
    }

    #[test]
    fn example8_puncture_matches_graph_code() {
        let p = example_graph().bipartition().unwrap().biadjacency;
        for i in 0..8 {
            check_against_graph_code(&p, i);
        }
    }

    #[test]
    fn random_punctures_match_graph_codes() {
        for seed in 0..20 {
            let k = 1 + seed as usize % 6;
            let p = random_orthogonal_matrix(k, seed);
            check_against_graph_code(&p, seed as usize % (2 * k));
        }
    }
}
