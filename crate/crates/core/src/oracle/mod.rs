//! Dense state-vector reference: exact graph states, reduced states and
//! cross terms for the access conditions, and the QQ circuits with arbitrary
//! secret amplitudes. Everything here is exponential and meant for checking
//! the fast paths on small instances.

mod state;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::access::{CcScheme, QqScheme};
use crate::gf2::PauliOperator;
use crate::graph::VertexSet;

pub use state::{dense_graph_state, pauli_matrix, StateVector, MAX_QUBITS};
/// Complex amplitude type used throughout the oracle.
pub use num_complex::Complex64 as Complex;

/// Default tolerance for the dense access checks.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Largest player count for exhaustive oracle classification.
pub const CLASSIFY_CAP: usize = 12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("{n} qubits exceeds the dense oracle cap of {cap}")]
    TooManyQubits { n: usize, cap: usize },
    #[error("state has norm {0}, expected 1")]
    NotNormalized(f64),
    #[error("measurement of qubit {qubit} has probability zero for the requested outcome")]
    ZeroProbability { qubit: usize },
    #[error("invalid recovery set: {0}")]
    InvalidWitness(String),
}

/// A reduced density matrix together with the qubits it lives on.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityBlock {
    pub subset: Vec<usize>,
    pub matrix: DMatrix<Complex64>,
}

/// `Tr_{T^c} |ψ⟩⟨ψ|` on the qubits of `subset`.
pub fn reduced_density(psi: &StateVector, subset: &VertexSet) -> DensityBlock {
    let rows: Vec<usize> = subset.iter().copied().collect();
    let m = psi.split(&rows);
    DensityBlock {
        matrix: &m * m.adjoint(),
        subset: rows,
    }
}

/// `Tr_T |ψ₀⟩⟨ψ₁|`, an operator on the complement of `traced`.
pub fn cross_partial_trace(
    psi0: &StateVector,
    psi1: &StateVector,
    traced: &VertexSet,
) -> DMatrix<Complex64> {
    let keep: Vec<usize> = (0..psi0.n()).filter(|q| !traced.contains(q)).collect();
    psi0.split(&keep) * psi1.split(&keep).adjoint()
}

/// `½‖ρ − σ‖₁` via the eigenvalues of the Hermitian difference.
pub fn trace_distance(rho: &DMatrix<Complex64>, sigma: &DMatrix<Complex64>) -> f64 {
    let diff = rho - sigma;
    0.5 * diff
        .symmetric_eigenvalues()
        .iter()
        .map(|e| e.abs())
        .sum::<f64>()
}

/// True iff the reduced states of `ψ₀` and `ψ₁` on `T` are within trace
/// distance `tol`, so no measurement on `T` tells them apart.
pub fn check_unauthorized_dense(
    psi0: &StateVector,
    psi1: &StateVector,
    t: &VertexSet,
    tol: f64,
) -> bool {
    let rho = reduced_density(psi0, t).matrix;
    let sigma = reduced_density(psi1, t).matrix;
    let diff = &rho - &sigma;
    // ‖Δ‖_F ≤ ‖Δ‖₁ ≤ √d‖Δ‖_F, so the eigen solve is only needed in between
    let frob = diff.norm();
    let dim = diff.nrows() as f64;
    if 0.5 * frob >= tol {
        false
    } else if 0.5 * dim.sqrt() * frob < tol {
        true
    } else {
        trace_distance(&rho, &sigma) < tol
    }
}

/// True iff every entry of `Tr_T |ψ₀⟩⟨ψ₁|` is below `tol`, i.e.
/// `⟨ψ₁|E|ψ₀⟩ = 0` for every operator `E` on the complement of `T`.
pub fn check_authorized_dense(
    psi0: &StateVector,
    psi1: &StateVector,
    t: &VertexSet,
    tol: f64,
) -> bool {
    cross_partial_trace(psi0, psi1, t)
        .iter()
        .all(|e| e.norm() < tol)
}

/// `(|G⟩, Z_A|G⟩)` for a CC scheme.
pub fn cc_pair(scheme: &CcScheme) -> Result<(StateVector, StateVector), OracleError> {
    let g = scheme.graph();
    let psi0 = dense_graph_state(g)?;
    let mut psi1 = psi0.clone();
    psi1.apply_pauli(&PauliOperator::z_on(g.n(), scheme.a().iter().copied()));
    Ok((psi0, psi1))
}

/// Dense version of the teleportation encoder: the dealer qubit (placed first)
/// holds `secret`, is entangled with `N_i` by controlled-Z gates, rotated by
/// H and measured; outcome 1 is corrected by `K_j` of `G∖i` with
/// `j = min N_i`. Returns the state of the share qubits in share indexing.
pub fn qq_encode_dense(
    scheme: &QqScheme,
    secret: &StateVector,
    outcome: bool,
) -> Result<StateVector, OracleError> {
    let share = scheme.share_scheme();
    let g = share.graph();
    let mut full = secret.tensor(&dense_graph_state(g)?)?;
    for &v in share.a() {
        full.apply_cz(0, v + 1);
    }
    full.apply_h(0);
    let (_, mut shares) = full.measure_and_discard(0, outcome)?;
    if outcome {
        let j = *share.a().iter().next().expect("N_i is non-empty");
        shares.apply_pauli(&g.stabilizer(j));
    }
    Ok(shares)
}

/// Checks that `d` (original labels) lies in the non-dealer part and meets
/// `N_i` an odd number of times; returns it in share indexing.
pub fn qq_recovery_set(scheme: &QqScheme, d: &VertexSet) -> Result<VertexSet, OracleError> {
    if let Some(v) = d.iter().find(|v| !scheme.recovery_part().contains(v)) {
        return Err(OracleError::InvalidWitness(format!(
            "vertex {v} is not in the part opposite the dealer"
        )));
    }
    if d.intersection(&scheme.dealer_neighbors()).count().is_multiple_of(2) {
        return Err(OracleError::InvalidWitness(
            "D meets the dealer's neighbourhood an even number of times".to_string(),
        ));
    }
    Ok(scheme
        .deletion()
        .set_to_new(d)
        .expect("dealer is not in the recovery part"))
}

/// `K_D` of `G∖i` and `U_D′ = Z_D X_{Odd(D)∖i}` in share indexing.
pub fn qq_recovery_operators(scheme: &QqScheme, d_share: &VertexSet) -> (PauliOperator, PauliOperator) {
    let g = scheme.share_scheme().graph();
    let k = g.stabilizer_product(d_share);
    let odd = g.odd_neighborhood(d_share);
    let u = PauliOperator::x_on(g.n(), odd).mul(&PauliOperator::z_on(g.n(), d_share.iter().copied()));
    (k, u.unsigned())
}

/// Dense version of the recovery circuit on the share state: an ancilla in
/// `|+⟩` is appended last, then controlled-`K_D`, H on the ancilla, and
/// controlled-`U_D′`. Returns the full output state.
pub fn qq_recover_dense(
    scheme: &QqScheme,
    shares: &StateVector,
    d: &VertexSet,
) -> Result<StateVector, OracleError> {
    let d_share = qq_recovery_set(scheme, d)?;
    let (k, u) = qq_recovery_operators(scheme, &d_share);
    let m = shares.n();
    let plus = StateVector::qubit(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0));
    let mut full = shares.tensor(&plus)?;
    let positions: Vec<usize> = (0..m).collect();
    full.apply_controlled_pauli(m, &k.embed(m + 1, &positions));
    full.apply_h(m);
    full.apply_controlled_pauli(m, &u.embed(m + 1, &positions));
    Ok(full)
}

/// Encodes `a|0⟩ + b|1⟩` with the given measurement outcome, recovers it with
/// `D`, and returns `⟨ψ|ρ_ancilla|ψ⟩`.
pub fn qq_roundtrip_branch(
    scheme: &QqScheme,
    d: &VertexSet,
    a: Complex64,
    b: Complex64,
    outcome: bool,
) -> Result<f64, OracleError> {
    qq_recovery_set(scheme, d)?;
    let secret = StateVector::qubit(a, b);
    let shares = qq_encode_dense(scheme, &secret, outcome)?;
    let out = qq_recover_dense(scheme, &shares, d)?;
    let anc: VertexSet = [out.n() - 1].into_iter().collect();
    let rho = reduced_density(&out, &anc).matrix;
    let s = DMatrix::from_column_slice(2, 1, secret.amplitudes());
    Ok((s.adjoint() * rho * s)[(0, 0)].norm())
}

/// Worst fidelity over both measurement branches of the encoder.
pub fn qq_roundtrip(
    scheme: &QqScheme,
    d: &VertexSet,
    a: Complex64,
    b: Complex64,
) -> Result<f64, OracleError> {
    let f0 = qq_roundtrip_branch(scheme, d, a, b, false)?;
    let f1 = qq_roundtrip_branch(scheme, d, a, b, true)?;
    Ok(f0.min(f1))
}

/// Basis encodings `(|G∖i⟩, Z_{N_i}|G∖i⟩)` of a QQ scheme.
pub fn qq_pair(scheme: &QqScheme) -> Result<(StateVector, StateVector), OracleError> {
    cc_pair(scheme.share_scheme())
}
