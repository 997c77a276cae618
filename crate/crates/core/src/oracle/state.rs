use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::OracleError;
use crate::gf2::PauliOperator;
use crate::graph::Graph;

/// Largest qubit count the dense oracle accepts.
pub const MAX_QUBITS: usize = 14;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A pure state on `n` qubits. Qubit 0 is the most significant bit of the
/// basis index: `|x_0 x_1 … x_{n−1}⟩` sits at `Σ x_q 2^{n−1−q}`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amplitudes: Vec<Complex64>,
}

fn check_size(n: usize) -> Result<(), OracleError> {
    if n > MAX_QUBITS {
        Err(OracleError::TooManyQubits { n, cap: MAX_QUBITS })
    } else {
        Ok(())
    }
}

impl StateVector {
    /// Wraps amplitudes, which must have length `2^n` and unit norm.
    pub fn new(n: usize, amplitudes: Vec<Complex64>) -> Result<Self, OracleError> {
        check_size(n)?;
        assert_eq!(amplitudes.len(), 1 << n, "amplitude count must be 2^n");
        let s = Self { n, amplitudes };
        if (s.norm() - 1.0).abs() > 1e-12 {
            return Err(OracleError::NotNormalized(s.norm()));
        }
        Ok(s)
    }

    /// The computational basis state `|index⟩`.
    pub fn basis(n: usize, index: usize) -> Result<Self, OracleError> {
        check_size(n)?;
        let mut amplitudes = vec![ZERO; 1 << n];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amplitudes })
    }

    /// `a|0⟩ + b|1⟩`, normalised.
    pub fn qubit(a: Complex64, b: Complex64) -> Self {
        let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
        Self {
            n: 1,
            amplitudes: vec![a / norm, b / norm],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    fn normalize(&mut self) {
        let norm = self.norm();
        for a in &mut self.amplitudes {
            *a /= norm;
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.n, other.n, "qubit count mismatch");
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &Self) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// Bit mask of the basis index for the qubit set given as a bit vector.
    fn index_mask(&self, qubits: impl Iterator<Item = usize>) -> usize {
        qubits.fold(0, |m, q| m | 1 << (self.n - 1 - q))
    }

    pub fn apply_pauli(&mut self, p: &PauliOperator) {
        assert_eq!(p.num_qubits(), self.n, "Pauli size mismatch");
        let xm = self.index_mask(p.x().iter_ones());
        let zm = self.index_mask(p.z().iter_ones());
        let phase = Complex64::i().powu(p.phase() as u32);
        let mut out = vec![ZERO; self.amplitudes.len()];
        for (b, &amp) in self.amplitudes.iter().enumerate() {
            let sign = if (b & zm).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            out[b ^ xm] = amp * phase * sign;
        }
        self.amplitudes = out;
    }

    /// `⟨ψ|P|ψ⟩`.
    pub fn expectation(&self, p: &PauliOperator) -> Complex64 {
        let mut image = self.clone();
        image.apply_pauli(p);
        self.inner(&image)
    }

    pub fn apply_h(&mut self, q: usize) {
        let bit = 1 << (self.n - 1 - q);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for b in 0..self.amplitudes.len() {
            if b & bit == 0 {
                let (a0, a1) = (self.amplitudes[b], self.amplitudes[b | bit]);
                self.amplitudes[b] = (a0 + a1) * s;
                self.amplitudes[b | bit] = (a0 - a1) * s;
            }
        }
    }

    pub fn apply_cz(&mut self, u: usize, v: usize) {
        let m = self.index_mask([u, v].into_iter());
        for (b, a) in self.amplitudes.iter_mut().enumerate() {
            if b & m == m {
                *a = -*a;
            }
        }
    }

    /// `|0⟩⟨0| ⊗ I + |1⟩⟨1| ⊗ P` with `control` outside the support of `P`.
    pub fn apply_controlled_pauli(&mut self, control: usize, p: &PauliOperator) {
        assert!(
            !p.x().get(control) && !p.z().get(control),
            "control qubit lies in the support of the target"
        );
        let bit = 1 << (self.n - 1 - control);
        let mut image = self.clone();
        image.apply_pauli(p);
        for (b, a) in self.amplitudes.iter_mut().enumerate() {
            if b & bit != 0 {
                *a = image.amplitudes[b];
            }
        }
    }

    /// Probability that measuring qubit `q` in the Z basis gives `outcome`.
    pub fn probability(&self, q: usize, outcome: bool) -> f64 {
        let bit = 1 << (self.n - 1 - q);
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(b, _)| (b & bit != 0) == outcome)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// Projects qubit `q` onto `|outcome⟩`, removes it, and renormalises.
    /// Returns the outcome probability and the post-measurement state.
    pub fn measure_and_discard(&self, q: usize, outcome: bool) -> Result<(f64, Self), OracleError> {
        let prob = self.probability(q, outcome);
        if prob < 1e-12 {
            return Err(OracleError::ZeroProbability { qubit: q });
        }
        let n = self.n - 1;
        let low_bits = self.n - 1 - q;
        let mut amplitudes = Vec::with_capacity(1 << n);
        for r in 0..1usize << n {
            let high = r >> low_bits;
            let low = r & ((1 << low_bits) - 1);
            let b = (high << (low_bits + 1)) | (usize::from(outcome) << low_bits) | low;
            amplitudes.push(self.amplitudes[b]);
        }
        let mut s = Self { n, amplitudes };
        s.normalize();
        Ok((prob, s))
    }

    /// `self ⊗ other`, with `other`'s qubits placed after this state's.
    pub fn tensor(&self, other: &Self) -> Result<Self, OracleError> {
        check_size(self.n + other.n)?;
        let mut amplitudes = Vec::with_capacity(self.amplitudes.len() * other.amplitudes.len());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        Ok(Self {
            n: self.n + other.n,
            amplitudes,
        })
    }

    /// Matrix whose rows are indexed by the basis states of `rows` and whose
    /// columns are indexed by the remaining qubits, both in increasing qubit order.
    pub(crate) fn split(&self, rows: &[usize]) -> DMatrix<Complex64> {
        let cols: Vec<usize> = (0..self.n).filter(|q| !rows.contains(q)).collect();
        let mut m = DMatrix::from_element(1 << rows.len(), 1 << cols.len(), ZERO);
        let gather = |b: usize, qs: &[usize]| {
            qs.iter()
                .fold(0usize, |acc, &q| (acc << 1) | ((b >> (self.n - 1 - q)) & 1))
        };
        for (b, &a) in self.amplitudes.iter().enumerate() {
            m[(gather(b, rows), gather(b, &cols))] = a;
        }
        m
    }

    /// The unique state fixed by `n` independent commuting Hermitian Paulis,
    /// obtained by projecting a generic vector.
    pub fn from_stabilizers(n: usize, generators: &[PauliOperator]) -> Result<Self, OracleError> {
        check_size(n)?;
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let amplitudes = (0..1usize << n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let mut s = Self { n, amplitudes };
        for g in generators {
            let mut image = s.clone();
            image.apply_pauli(g);
            for (a, b) in s.amplitudes.iter_mut().zip(&image.amplitudes) {
                *a = (*a + b) * 0.5;
            }
        }
        if s.norm() < 1e-9 {
            return Err(OracleError::ZeroProbability { qubit: 0 });
        }
        s.normalize();
        Ok(s)
    }
}

/// The graph state: amplitude of `x` is `2^{−n/2}·(−1)^{Σ_{(u,v)∈E} x_u x_v}`.
pub fn dense_graph_state(graph: &Graph) -> Result<StateVector, OracleError> {
    let n = graph.n();
    check_size(n)?;
    let edges: Vec<usize> = graph
        .edges()
        .iter()
        .map(|&(u, v)| (1 << (n - 1 - u)) | (1 << (n - 1 - v)))
        .collect();
    let amp = (0.5f64).powf(n as f64 / 2.0);
    let amplitudes = (0..1usize << n)
        .map(|x| {
            let parity = edges.iter().filter(|&&m| x & m == m).count() % 2;
            Complex64::new(if parity == 1 { -amp } else { amp }, 0.0)
        })
        .collect();
    Ok(StateVector { n, amplitudes })
}

/// The `2^n × 2^n` matrix of a Pauli operator in the oracle's basis order.
pub fn pauli_matrix(p: &PauliOperator) -> DMatrix<Complex64> {
    let n = p.num_qubits();
    check_size(n).expect("Pauli too large for a dense matrix");
    let dim = 1 << n;
    let mut m = DMatrix::from_element(dim, dim, ZERO);
    for col in 0..dim {
        let mut v = StateVector::basis(n, col).unwrap();
        v.apply_pauli(p);
        for (row, a) in v.amplitudes.iter().enumerate() {
            m[(row, col)] = *a;
        }
    }
    m
}
