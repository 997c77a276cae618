use std::fmt;

use rand::Rng;

use super::SimError;
use crate::code::{group_sign, symplectic_matrix};
use crate::gf2::{Pauli, PauliOperator};
use crate::graph::Graph;
use crate::oracle::{OracleError, StateVector};

/// A gate from the scheme circuits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gate {
    H(usize),
    Cz(usize, usize),
    Pauli(PauliOperator),
    /// `|0⟩⟨0| ⊗ I + |1⟩⟨1| ⊗ P` with `control ∉ supp(P)`.
    ControlledPauli { control: usize, target: PauliOperator },
}

impl Gate {
    /// One trace line with qubits printed through `labels`.
    pub fn trace_line<L: fmt::Display>(&self, labels: &[L]) -> String {
        match self {
            Self::H(q) => format!("H {}", labels[*q]),
            Self::Cz(u, v) => format!("CZ {} {}", labels[*u], labels[*v]),
            Self::Pauli(p) => format!("PAULI {}", p.to_sparse_string(labels)),
            Self::ControlledPauli { control, target } => {
                format!("CPAULI {} {}", labels[*control], target.to_sparse_string(labels))
            }
        }
    }
}

/// Result of a Pauli measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Measurement {
    /// `+1` or `−1`.
    pub value: i8,
    /// Whether the state fixed the outcome in advance.
    pub deterministic: bool,
}

impl Measurement {
    /// `0` for `+1`, `1` for `−1`.
    pub fn bit(&self) -> u8 {
        u8::from(self.value < 0)
    }
}

/// A pure stabilizer state given by `n` signed, independent, commuting generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerState {
    n: usize,
    generators: Vec<PauliOperator>,
}

impl StabilizerState {
    pub fn new(n: usize, generators: Vec<PauliOperator>) -> Result<Self, SimError> {
        if generators.len() != n {
            return Err(SimError::InvalidState(format!(
                "{} generators for {n} qubits",
                generators.len()
            )));
        }
        crate::code::StabilizerCode::new(n, generators.clone())
            .map_err(|e| SimError::InvalidState(e.to_string()))?;
        if generators.iter().any(|g| g.sign().is_none()) {
            return Err(SimError::InvalidState("generator sign must be ±1".into()));
        }
        Ok(Self { n, generators })
    }

    /// `|0…0⟩`.
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            generators: (0..n).map(|q| PauliOperator::single(n, q, Pauli::Z)).collect(),
        }
    }

    /// The graph state: generators `K_v`, all signs `+`.
    pub fn prepare_graph_state(graph: &Graph) -> Self {
        Self {
            n: graph.n(),
            generators: (0..graph.n()).map(|v| graph.stabilizer(v)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn apply_gate(&mut self, gate: &Gate) {
        match gate {
            Gate::H(q) => self.generators.iter_mut().for_each(|g| g.conjugate_h(*q)),
            Gate::Cz(u, v) => self.generators.iter_mut().for_each(|g| g.conjugate_cz(*u, *v)),
            Gate::Pauli(p) => self.generators.iter_mut().for_each(|g| g.conjugate_pauli(p)),
            Gate::ControlledPauli { control, target } => self
                .generators
                .iter_mut()
                .for_each(|g| g.conjugate_controlled(*control, target)),
        }
    }

    /// `+1`/`−1` if `±P` stabilizes the state, `None` if `P` is not in the group.
    pub fn stabilizer_sign(&self, p: &PauliOperator) -> Option<i8> {
        group_sign(&self.generators, p)
    }

    /// Measures the Hermitian Pauli `p`. A random outcome is taken from
    /// `forced` if given (`false` for `+1`), else drawn from `rng`.
    pub fn measure<R: Rng + ?Sized>(
        &mut self,
        p: &PauliOperator,
        forced: Option<bool>,
        rng: &mut R,
    ) -> Result<Measurement, SimError> {
        if !p.is_hermitian() {
            return Err(SimError::NotHermitian(p.to_string()));
        }
        let Some(first) = self.generators.iter().position(|g| !g.commutes(p)) else {
            let value = self
                .stabilizer_sign(p)
                .expect("a commuting Pauli lies in ±S for a pure state");
            if let Some(f) = forced {
                if f != (value < 0) {
                    return Err(SimError::ForcedOutcome {
                        operator: p.to_string(),
                        value,
                    });
                }
            }
            return Ok(Measurement {
                value,
                deterministic: true,
            });
        };
        let pivot = self.generators[first].clone();
        for (i, g) in self.generators.iter_mut().enumerate() {
            if i != first && !g.commutes(p) {
                g.mul_assign(&pivot);
            }
        }
        let minus = forced.unwrap_or_else(|| rng.gen());
        self.generators[first] = if minus { p.negated() } else { p.clone() };
        Ok(Measurement {
            value: if minus { -1 } else { 1 },
            deterministic: false,
        })
    }

    /// Splits off qubit `q`, which must be unentangled from the rest. Returns
    /// its single-qubit stabilizer and the state of the other qubits.
    pub fn split_qubit(&self, q: usize) -> Result<(PauliOperator, Self), SimError> {
        let mut gens = self.generators.clone();
        let mut pivots = Vec::new();
        for bit in [true, false] {
            let read = |g: &PauliOperator| if bit { g.x().get(q) } else { g.z().get(q) };
            let Some(p) = (0..gens.len()).find(|i| !pivots.contains(i) && read(&gens[*i])) else {
                continue;
            };
            let pivot = gens[p].clone();
            for (i, g) in gens.iter_mut().enumerate() {
                if i != p && read(g) {
                    g.mul_assign(&pivot);
                }
            }
            pivots.push(p);
        }
        if pivots.len() != 1 {
            return Err(SimError::Entangled(q));
        }
        let rest_idx: Vec<usize> = (0..self.n).filter(|&v| v != q).collect();
        let rest: Vec<PauliOperator> = gens
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != pivots[0])
            .map(|(_, g)| g.restrict(&rest_idx))
            .collect();
        // pivot = s·(P_q ⊗ R) and t·R stabilizes the rest, so s·t·P_q fixes qubit q;
        // restrict keeps s on r, so group_sign(r) = s·t
        let pivot = &gens[pivots[0]];
        let r = pivot.restrict(&rest_idx);
        let r_sign = group_sign(&rest, &r).ok_or(SimError::Entangled(q))?;
        let mut single = pivot.restrict(&[q]).unsigned();
        if r_sign < 0 {
            single.negate();
        }
        debug_assert_eq!(symplectic_matrix(self.n - 1, &rest).rank(), self.n - 1);
        Ok((
            single,
            Self {
                n: self.n - 1,
                generators: rest,
            },
        ))
    }

    /// Appends a qubit stabilized by the single-qubit operator `p` as the last qubit.
    pub fn append_qubit(&self, p: &PauliOperator) -> Self {
        let n = self.n + 1;
        let old: Vec<usize> = (0..self.n).collect();
        let mut generators: Vec<PauliOperator> =
            self.generators.iter().map(|g| g.embed(n, &old)).collect();
        generators.push(p.embed(n, &[self.n]));
        Self { n, generators }
    }

    /// Equality of the stabilized states (same signed group).
    pub fn same_state(&self, other: &Self) -> bool {
        self.n == other.n
            && other
                .generators
                .iter()
                .all(|g| self.stabilizer_sign(g) == Some(1))
    }

    pub fn to_dense(&self) -> Result<StateVector, OracleError> {
        StateVector::from_stabilizers(self.n, &self.generators)
    }
}

impl fmt::Display for StabilizerState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "⟨{}⟩", gens.join(", "))
    }
}
