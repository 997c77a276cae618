//! Stabilizer-tableau simulation of the sharing and recovery circuits.

mod state;

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

use crate::access::{AccessError, CcScheme, QqScheme};
use crate::gf2::{Pauli, PauliOperator};
use crate::graph::VertexSet;

pub use state::{Gate, Measurement, StabilizerState};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("invalid stabilizer state: {0}")]
    InvalidState(String),
    #[error("cannot measure non-Hermitian operator {0}")]
    NotHermitian(String),
    #[error("measurement of {operator} is deterministic with value {value:+}; the forced outcome is impossible")]
    ForcedOutcome { operator: String, value: i8 },
    #[error("qubit {0} is entangled with the rest of the register")]
    Entangled(usize),
    #[error("invalid recovery set: {0}")]
    InvalidWitness(String),
    #[error("unknown secret label {0:?}; expected one of 0, 1, +, -, +i, -i")]
    UnknownSecret(String),
    #[error(transparent)]
    Access(#[from] AccessError),
}

/// The six single-qubit stabilizer states usable as tableau secrets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SecretLabel {
    Zero,
    One,
    Plus,
    Minus,
    PlusI,
    MinusI,
}

impl SecretLabel {
    pub const ALL: [Self; 6] = [
        Self::Zero,
        Self::One,
        Self::Plus,
        Self::Minus,
        Self::PlusI,
        Self::MinusI,
    ];

    /// The single-qubit Pauli fixing this state.
    pub fn stabilizer(self) -> PauliOperator {
        let (p, minus) = match self {
            Self::Zero => (Pauli::Z, false),
            Self::One => (Pauli::Z, true),
            Self::Plus => (Pauli::X, false),
            Self::Minus => (Pauli::X, true),
            Self::PlusI => (Pauli::Y, false),
            Self::MinusI => (Pauli::Y, true),
        };
        let op = PauliOperator::single(1, 0, p);
        if minus {
            op.negated()
        } else {
            op
        }
    }

    pub fn from_stabilizer(p: &PauliOperator) -> Option<Self> {
        Self::ALL.into_iter().find(|l| &l.stabilizer() == p)
    }
}

impl fmt::Display for SecretLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Zero => "0",
            Self::One => "1",
            Self::Plus => "+",
            Self::Minus => "-",
            Self::PlusI => "+i",
            Self::MinusI => "-i",
        })
    }
}

impl FromStr for SecretLabel {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self, SimError> {
        match s.trim() {
            "0" => Ok(Self::Zero),
            "1" => Ok(Self::One),
            "+" => Ok(Self::Plus),
            "-" | "−" => Ok(Self::Minus),
            "+i" => Ok(Self::PlusI),
            "-i" | "−i" => Ok(Self::MinusI),
            other => Err(SimError::UnknownSecret(other.to_string())),
        }
    }
}

/// Line-per-operation circuit log.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trace {
    pub lines: Vec<String>,
}

impl Trace {
    pub fn push(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

fn run(state: &mut StabilizerState, gate: Gate, labels: &[String], trace: &mut Trace) {
    trace.push(gate.trace_line(labels));
    state.apply_gate(&gate);
}

/// `Z_A^s|G⟩`.
pub fn cc_encode(scheme: &CcScheme, s: bool) -> StabilizerState {
    let mut state = StabilizerState::prepare_graph_state(scheme.graph());
    if s {
        let z_a = PauliOperator::z_on(scheme.player_count(), scheme.a().iter().copied());
        state.apply_gate(&Gate::Pauli(z_a));
    }
    state
}

/// Measures `K_D` and reads the secret bit from its sign. `D` is in vertex
/// indices and must meet `A` an odd number of times.
pub fn cc_recover<R: Rng + ?Sized>(
    state: &mut StabilizerState,
    d: &VertexSet,
    scheme: &CcScheme,
    rng: &mut R,
    trace: &mut Trace,
) -> Result<bool, SimError> {
    if d.intersection(scheme.a()).count().is_multiple_of(2) {
        return Err(SimError::InvalidWitness(
            "|D ∩ A| is even, so K_D cannot distinguish the secrets".to_string(),
        ));
    }
    let k = scheme.graph().stabilizer_product(d);
    // on an encoded state K_D is ±1-valued, so rng is only consulted for other inputs
    let m = state.measure(&k, None, rng)?;
    let labels: Vec<String> = scheme.labels().iter().map(|l| l.to_string()).collect();
    trace.push(format!("MEAS {} -> {}", k.to_sparse_string(&labels), m.bit()));
    Ok(m.value < 0)
}

/// Teleports a stabilizer secret into `a|G∖i⟩ + b·Z_{N_i}|G∖i⟩`.
///
/// The dealer qubit holds the secret next to `|G∖i⟩`, is entangled by
/// controlled-Z gates with `N_i`, rotated by H and measured in the Z basis;
/// outcome 1 is corrected by `K_j` of `G∖i`, `j = min N_i`. The result is
/// on the share qubits in share indexing. `forced` fixes the measurement
/// outcome (`false` for 0).
pub fn qq_encode<R: Rng + ?Sized>(
    scheme: &QqScheme,
    secret: SecretLabel,
    forced: Option<bool>,
    rng: &mut R,
    trace: &mut Trace,
) -> Result<StabilizerState, SimError> {
    let g = scheme.graph();
    let n = g.n();
    let i = scheme.dealer();
    let del = scheme.deletion();
    let share_graph = scheme.share_scheme().graph();
    let mut generators: Vec<PauliOperator> = Vec::with_capacity(n);
    for v in 0..n {
        if v == i {
            generators.push(secret.stabilizer().embed(n, &[i]));
        } else {
            let k = share_graph.stabilizer(del.old_to_new(v).expect("v is not the dealer"));
            generators.push(k.embed(n, &del.new_to_old));
        }
    }
    let mut state = StabilizerState::new(n, generators)?;
    let labels: Vec<String> = (0..n).map(|v| v.to_string()).collect();
    for j in scheme.dealer_neighbors() {
        run(&mut state, Gate::Cz(i, j), &labels, trace);
    }
    run(&mut state, Gate::H(i), &labels, trace);
    let m = state.measure(&PauliOperator::single(n, i, Pauli::Z), forced, rng)?;
    trace.push(format!("MEASZ {i} -> {}", m.bit()));
    let (dealer_state, mut shares) = state.split_qubit(i)?;
    debug_assert_eq!(dealer_state.x().weight(), 0);
    if m.value < 0 {
        let j = *scheme.share_scheme().a().iter().next().expect("N_i is non-empty");
        let correction = share_graph.stabilizer(j);
        let share_labels: Vec<String> = del.new_to_old.iter().map(|v| v.to_string()).collect();
        run(&mut shares, Gate::Pauli(correction), &share_labels, trace);
    }
    Ok(shares)
}

/// `D` (original labels) checked against the non-dealer part and `N_i`,
/// returned in share indexing.
fn recovery_set(scheme: &QqScheme, d: &VertexSet) -> Result<VertexSet, SimError> {
    crate::oracle::qq_recovery_set(scheme, d).map_err(|e| match e {
        crate::oracle::OracleError::InvalidWitness(msg) => SimError::InvalidWitness(msg),
        other => SimError::InvalidWitness(other.to_string()),
    })
}

/// Recovers the secret from the share state with `D` (original labels).
///
/// An ancilla `a` in `|+⟩` is appended, then controlled-`K_D` (restricted to
/// the shares), H on the ancilla, and controlled-`U_D′` with
/// `U_D′ = Z_D X_{Odd(D)∖i}`. Returns the ancilla's stabilizer label and the
/// residual share state.
pub fn qq_recover(
    state: &StabilizerState,
    scheme: &QqScheme,
    d: &VertexSet,
    trace: &mut Trace,
) -> Result<(SecretLabel, StabilizerState), SimError> {
    let d_share = recovery_set(scheme, d)?;
    let (k, u) = crate::oracle::qq_recovery_operators(scheme, &d_share);
    let m = state.n();
    let mut full = state.append_qubit(&SecretLabel::Plus.stabilizer());
    let mut labels: Vec<String> = scheme.players().iter().map(|v| v.to_string()).collect();
    labels.push("a".to_string());
    let positions: Vec<usize> = (0..m).collect();
    run(
        &mut full,
        Gate::ControlledPauli {
            control: m,
            target: k.embed(m + 1, &positions),
        },
        &labels,
        trace,
    );
    run(&mut full, Gate::H(m), &labels, trace);
    run(
        &mut full,
        Gate::ControlledPauli {
            control: m,
            target: u.embed(m + 1, &positions),
        },
        &labels,
        trace,
    );
    let (anc, residual) = full.split_qubit(m)?;
    let label = SecretLabel::from_stabilizer(&anc).expect("single-qubit Hermitian Pauli");
    Ok((label, residual))
}
