use std::fmt;

use super::{symplectic_matrix, CodeError, StabilizerCode};
use crate::gf2::{BitMatrix, BitVector, PauliOperator};

/// A single-qubit Clifford applied during the standard-form reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LocalClifford {
    /// Hadamard: swaps the X and Z columns of a qubit.
    H(usize),
    /// Phase gate: `X → Y`, toggles the Z entry of every row with an X entry.
    S(usize),
}

impl LocalClifford {
    pub fn apply(&self, op: &mut PauliOperator) {
        match *self {
            Self::H(q) => op.conjugate_h(q),
            Self::S(q) => op.conjugate_s(q),
        }
    }
}

impl fmt::Display for LocalClifford {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::H(q) => write!(f, "H {q}"),
            Self::S(q) => write!(f, "S {q}"),
        }
    }
}

/// An `[[n,1]]` code brought to the block form
///
/// ```text
/// [ I_r  A1  A2 | B   0        C ]
/// [ 0    0   0  | D   I_{n-r-1} E ]
/// ```
///
/// with `diag(B + C·A2ᵗ) = 0`, together with the qubit permutation and
/// single-qubit Cliffords that take the original code there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardFormCode {
    pub n: usize,
    pub r: usize,
    pub a1: BitMatrix,
    pub a2: BitMatrix,
    pub b: BitMatrix,
    pub c: BitMatrix,
    pub d: BitMatrix,
    pub e: BitMatrix,
    /// Position `p` of the standard form holds original qubit `qubit_permutation[p]`.
    pub qubit_permutation: Vec<usize>,
    /// Gates applied after the permutation, in order, on permuted positions.
    pub local_cliffords: Vec<LocalClifford>,
    /// Transformed generators with exact signs; row-equivalent to the block matrix.
    pub generators: Vec<PauliOperator>,
}

impl StandardFormCode {
    /// Maps an operator on the original code's qubits into standard-form positions.
    pub fn transform(&self, op: &PauliOperator) -> PauliOperator {
        let mut out = op.restrict(&self.qubit_permutation);
        for g in &self.local_cliffords {
            g.apply(&mut out);
        }
        out
    }

    /// Replays the permutation and Clifford log on every operator of `code`.
    pub fn transform_code(&self, code: &StabilizerCode) -> StabilizerCode {
        code.map_operators(|op| self.transform(op))
    }

    /// The Hadamards `I^{⊗r} H^{⊗(n−r)}` that take the standard form to the
    /// graph code `(G, A)`.
    pub fn graph_hadamards(&self) -> Vec<LocalClifford> {
        (self.r..self.n).map(LocalClifford::H).collect()
    }

    /// Full local-Clifford log from the original code to the graph code.
    pub fn graph_transform_log(&self) -> Vec<LocalClifford> {
        let mut log = self.local_cliffords.clone();
        log.extend(self.graph_hadamards());
        log
    }

    /// Maps an operator on the original qubits all the way to the graph code.
    pub fn transform_to_graph(&self, op: &PauliOperator) -> PauliOperator {
        let mut out = self.transform(op);
        for g in self.graph_hadamards() {
            g.apply(&mut out);
        }
        out
    }

    /// The `(n−1) × 2n` block stabilizer matrix assembled from the blocks.
    pub fn stabilizer_matrix(&self) -> BitMatrix {
        let (n, r) = (self.n, self.r);
        let m = n - r - 1;
        let mut rows = Vec::with_capacity(n - 1);
        for i in 0..r {
            let x = BitVector::unit(r, i)
                .concat(self.a1.row(i))
                .concat(self.a2.row(i));
            let z = self
                .b
                .row(i)
                .concat(&BitVector::zeros(m))
                .concat(self.c.row(i));
            rows.push(x.concat(&z));
        }
        for j in 0..m {
            let x = BitVector::zeros(n);
            let z = self
                .d
                .row(j)
                .concat(&BitVector::unit(m, j))
                .concat(self.e.row(j));
            rows.push(x.concat(&z));
        }
        BitMatrix::from_rows(2 * n, rows)
    }

    /// `B + C·A2ᵗ`, the top-left adjacency block.
    pub fn b_plus_c_a2t(&self) -> BitMatrix {
        self.b.add(&self.c.mul(&self.a2.transpose()))
    }

    /// Logical X `[0 Eᵗ 1 | Cᵗ 0 0]`.
    pub fn logical_x(&self) -> PauliOperator {
        let (n, r) = (self.n, self.r);
        let x = BitVector::zeros(r)
            .concat(&self.e.column(0))
            .concat(&BitVector::ones(1));
        let z = self.c.column(0).concat(&BitVector::zeros(n - r));
        PauliOperator::hermitian(x, z)
    }

    /// Logical Z `[0 0 0 | A2ᵗ 0 1]`.
    pub fn logical_z(&self) -> PauliOperator {
        let (n, r) = (self.n, self.r);
        let z = self
            .a2
            .column(0)
            .concat(&BitVector::zeros(n - r - 1))
            .concat(&BitVector::ones(1));
        PauliOperator::hermitian(BitVector::zeros(n), z)
    }

    /// The standard-form code with its canonical logical operators.
    pub fn to_code(&self) -> StabilizerCode {
        StabilizerCode::new(self.n, self.generators.clone())
            .and_then(|c| c.with_logicals(self.logical_x(), self.logical_z()))
            .expect("standard form is a valid [[n,1]] code")
    }

    /// Labelled block listing for reports.
    pub fn report(&self) -> String {
        let mut out = format!("n = {}, r = {}\n", self.n, self.r);
        out.push_str(&format!("qubit permutation: {:?}\n", self.qubit_permutation));
        let log: Vec<String> = self.local_cliffords.iter().map(|g| g.to_string()).collect();
        out.push_str(&format!("local Cliffords: [{}]\n", log.join(", ")));
        for (name, m) in [
            ("A1", &self.a1),
            ("A2", &self.a2),
            ("B", &self.b),
            ("C", &self.c),
            ("D", &self.d),
            ("E", &self.e),
        ] {
            out.push_str(&format!("{name} ({}x{}):\n", m.rows(), m.cols()));
            for row in m.iter_rows() {
                out.push_str(&format!("  {row}\n"));
            }
        }
        out
    }
}

/// Reduces an `[[n,1]]` code to block standard form by row operations, a qubit
/// permutation, and phase gates that clear the diagonal of `B + C·A2ᵗ`.
pub fn standard_form(code: &StabilizerCode) -> Result<StandardFormCode, CodeError> {
    if code.k() != 1 {
        return Err(CodeError::WrongLogicalCount {
            expected: 1,
            found: code.k(),
        });
    }
    let n = code.n();
    let mut rows: Vec<PauliOperator> = code.generators().to_vec();
    if symplectic_matrix(n, &rows).rank() != rows.len() {
        return Err(CodeError::Dependent);
    }

    // X block: reduced echelon form on the X bits.
    let x_pivots = eliminate(&mut rows, 0, n, |p, c| p.x().get(c), 0..n);
    let r = x_pivots.len();

    // Remaining rows are Z-type; eliminate on Z bits over the non-pivot columns.
    let free: Vec<usize> = (0..n).filter(|c| !x_pivots.contains(c)).collect();
    let z_pivots = eliminate(&mut rows, r, n, |p, c| p.z().get(c), free.iter().copied());
    debug_assert_eq!(z_pivots.len(), n - 1 - r);
    let last: Vec<usize> = free
        .iter()
        .copied()
        .filter(|c| !z_pivots.contains(c))
        .collect();
    debug_assert_eq!(last.len(), 1);

    // Clear the Z entries of the X-type rows on the Z-pivot columns.
    for (t, &c) in z_pivots.iter().enumerate() {
        let pivot = rows[r + t].clone();
        for row in rows.iter_mut().take(r) {
            if row.z().get(c) {
                row.mul_assign(&pivot);
            }
        }
    }

    let mut qubit_permutation = x_pivots.clone();
    qubit_permutation.extend(&z_pivots);
    qubit_permutation.extend(&last);
    let mut generators: Vec<PauliOperator> = rows
        .iter()
        .map(|p| p.restrict(&qubit_permutation))
        .collect();

    // Phase gates fix the diagonal of B + C·A2ᵗ.
    let mut local_cliffords = Vec::new();
    for i in 0..r {
        let g = &generators[i];
        let diag = g.z().get(i) ^ (g.z().get(n - 1) & g.x().get(n - 1));
        if diag {
            let gate = LocalClifford::S(i);
            for g in generators.iter_mut() {
                gate.apply(g);
            }
            local_cliffords.push(gate);
        }
    }

    let m = n - r - 1;
    let cols = |range: std::ops::Range<usize>| range.collect::<Vec<usize>>();
    let x_rows: Vec<usize> = (0..r).collect();
    let z_rows: Vec<usize> = (r..n - 1).collect();
    let xs = BitMatrix::from_rows(n, generators.iter().map(|g| g.x().clone()).collect());
    let zs = BitMatrix::from_rows(n, generators.iter().map(|g| g.z().clone()).collect());
    let std = StandardFormCode {
        n,
        r,
        a1: xs.submatrix(&x_rows, &cols(r..r + m)),
        a2: xs.submatrix(&x_rows, &[n - 1]),
        b: zs.submatrix(&x_rows, &cols(0..r)),
        c: zs.submatrix(&x_rows, &[n - 1]),
        d: zs.submatrix(&z_rows, &cols(0..r)),
        e: zs.submatrix(&z_rows, &[n - 1]),
        qubit_permutation,
        local_cliffords,
        generators,
    };
    debug_assert_eq!(std.stabilizer_matrix(), symplectic_matrix(n, &std.generators));
    Ok(std)
}

/// Gauss-Jordan elimination on `rows[start..]` over the given columns, using
/// `bit` to read the entry. Returns the pivot columns in order; pivot `t` ends
/// up in row `start + t`.
fn eliminate<F, I>(
    rows: &mut [PauliOperator],
    start: usize,
    _n: usize,
    bit: F,
    columns: I,
) -> Vec<usize>
where
    F: Fn(&PauliOperator, usize) -> bool,
    I: IntoIterator<Item = usize>,
{
    let mut next = start;
    let mut pivots = Vec::new();
    for c in columns {
        if next == rows.len() {
            break;
        }
        let Some(p) = (next..rows.len()).find(|&i| bit(&rows[i], c)) else {
            continue;
        };
        rows.swap(next, p);
        let pivot = rows[next].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i >= start && i != next && bit(row, c) {
                row.mul_assign(&pivot);
            }
        }
        pivots.push(c);
        next += 1;
    }
    pivots
}
