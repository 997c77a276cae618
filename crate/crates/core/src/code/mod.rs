//! Stabilizer codes: validation, the block standard form, conversion between
//! `[[n,1]]` codes and graph schemes `(G, A)`, encoded-Z coset enumeration, and
//! CSS state codes with puncturing.

mod coset;
mod css;
mod graph_code;
mod io;
mod standard_form;

use thiserror::Error;

use crate::gf2::{BitMatrix, BitVector, Pauli, PauliOperator};
use crate::graph::OrthogonalityError;

pub use coset::{logical_z_coset, logical_z_coset_with_cap, CosetIter, DEFAULT_ENUMERATION_CAP};
pub use css::{css_state_code, puncture};
pub use graph_code::{code_to_graph, graph_to_code};
pub use io::{parse_code, serialize_code};
pub use standard_form::{standard_form, LocalClifford, StandardFormCode};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("operator {index} acts on {found} qubits, expected {expected}")]
    SizeMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("generator {0} is not Hermitian")]
    NotHermitian(usize),
    #[error("generators {0} and {1} anticommute")]
    Anticommuting(usize, usize),
    #[error("generators are not independent")]
    Dependent,
    #[error("expected a code with k = {expected} logical qubits, found k = {found}")]
    WrongLogicalCount { expected: usize, found: usize },
    #[error("invalid logical operators: {0}")]
    InvalidLogical(String),
    #[error("the encoding set A must be non-empty")]
    EmptyEncodingSet,
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("coset enumeration over {n} qubits exceeds the cap of {cap}; use the graphical decider instead")]
    CapExceeded { n: usize, cap: usize },
    #[error(transparent)]
    Orthogonality(#[from] OrthogonalityError),
    #[error("not a CSS state code of the form [I P | 0 0; 0 0 | I P]: {0}")]
    NotCssState(String),
    #[error("qubit {qubit} out of range for a code on {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A stabilizer code given by independent, mutually commuting Hermitian
/// generators, with optional logical operators for the `k = 1` case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerCode {
    n: usize,
    generators: Vec<PauliOperator>,
    logical_x: Option<PauliOperator>,
    logical_z: Option<PauliOperator>,
    distance: Option<usize>,
}

impl StabilizerCode {
    pub fn new(n: usize, generators: Vec<PauliOperator>) -> Result<Self, CodeError> {
        for (i, g) in generators.iter().enumerate() {
            if g.num_qubits() != n {
                return Err(CodeError::SizeMismatch {
                    index: i,
                    expected: n,
                    found: g.num_qubits(),
                });
            }
            if !g.is_hermitian() {
                return Err(CodeError::NotHermitian(i));
            }
        }
        for i in 0..generators.len() {
            for j in i + 1..generators.len() {
                if !generators[i].commutes(&generators[j]) {
                    return Err(CodeError::Anticommuting(i, j));
                }
            }
        }
        if symplectic_matrix(n, &generators).rank() != generators.len() {
            return Err(CodeError::Dependent);
        }
        Ok(Self {
            n,
            generators,
            logical_x: None,
            logical_z: None,
            distance: None,
        })
    }

    /// Attaches logical operators; both must commute with every generator and
    /// anticommute with each other.
    pub fn with_logicals(
        mut self,
        logical_x: PauliOperator,
        logical_z: PauliOperator,
    ) -> Result<Self, CodeError> {
        if self.k() != 1 {
            return Err(CodeError::WrongLogicalCount {
                expected: 1,
                found: self.k(),
            });
        }
        for (name, op) in [("X", &logical_x), ("Z", &logical_z)] {
            if op.num_qubits() != self.n {
                return Err(CodeError::InvalidLogical(format!(
                    "logical {name} acts on {} qubits",
                    op.num_qubits()
                )));
            }
            if !op.is_hermitian() {
                return Err(CodeError::InvalidLogical(format!(
                    "logical {name} is not Hermitian"
                )));
            }
            if let Some(i) = self.generators.iter().position(|g| !g.commutes(op)) {
                return Err(CodeError::InvalidLogical(format!(
                    "logical {name} anticommutes with generator {i}"
                )));
            }
        }
        if logical_x.commutes(&logical_z) {
            return Err(CodeError::InvalidLogical(
                "logical X and Z commute".to_string(),
            ));
        }
        self.logical_x = Some(logical_x);
        self.logical_z = Some(logical_z);
        Ok(self)
    }

    /// Fills in logical operators from the normalizer when none are attached.
    pub fn with_default_logicals(self) -> Result<Self, CodeError> {
        if self.logical_x.is_some() && self.logical_z.is_some() {
            return Ok(self);
        }
        let (lx, lz) = self.find_logicals()?;
        self.with_logicals(lx, lz)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.n - self.generators.len()
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn logical_x(&self) -> Option<&PauliOperator> {
        self.logical_x.as_ref()
    }

    pub fn logical_z(&self) -> Option<&PauliOperator> {
        self.logical_z.as_ref()
    }

    pub fn distance(&self) -> Option<usize> {
        self.distance
    }

    /// Rows `(x | z)` of the generators.
    pub fn symplectic_matrix(&self) -> BitMatrix {
        symplectic_matrix(self.n, &self.generators)
    }

    /// Whether both codes have the same stabilizer group up to signs.
    pub fn same_group(&self, other: &Self) -> bool {
        same_group(self.n, &self.generators, other.n, &other.generators)
    }

    /// `Some(±1)` when `±op` lies in the stabilizer group, `None` otherwise.
    pub fn group_sign(&self, op: &PauliOperator) -> Option<i8> {
        group_sign(&self.generators, op)
    }

    /// A pair of logical operators for a `k = 1` code, taken from a basis of
    /// the normalizer.
    pub fn find_logicals(&self) -> Result<(PauliOperator, PauliOperator), CodeError> {
        if self.k() != 1 {
            return Err(CodeError::WrongLogicalCount {
                expected: 1,
                found: self.k(),
            });
        }
        let n = self.n;
        // v is in the normalizer iff  g_x·v_z + g_z·v_x = 0 for every generator.
        let twisted = BitMatrix::from_rows(
            2 * n,
            self.generators
                .iter()
                .map(|g| g.z().concat(g.x()))
                .collect(),
        );
        let normalizer = twisted.nullspace();
        let stab = self.symplectic_matrix();
        let base_rank = stab.rank();
        let to_op = |v: &BitVector| {
            let x = v.select(&(0..n).collect::<Vec<_>>());
            let z = v.select(&(n..2 * n).collect::<Vec<_>>());
            PauliOperator::hermitian(x, z)
        };
        let mut lx = None;
        for v in &normalizer {
            let mut m = stab.clone();
            m.push_row(v.clone());
            if m.rank() > base_rank {
                lx = Some(to_op(v));
                break;
            }
        }
        let lx = lx.ok_or_else(|| CodeError::InvalidLogical("normalizer equals stabilizer".into()))?;
        let lz = normalizer
            .iter()
            .map(to_op)
            .find(|op| !op.commutes(&lx))
            .ok_or_else(|| CodeError::InvalidLogical("no anticommuting partner".into()))?;
        Ok((lx, lz))
    }

    /// Minimum weight of a nontrivial logical operator, by enumeration of the
    /// three logical cosets. Only for `k = 1` and `n ≤ 12`.
    pub fn compute_distance(&self) -> Result<usize, CodeError> {
        if self.n > 12 {
            return Err(CodeError::CapExceeded { n: self.n, cap: 12 });
        }
        let (lx, lz) = match (&self.logical_x, &self.logical_z) {
            (Some(x), Some(z)) => (x.clone(), z.clone()),
            _ => self.find_logicals()?,
        };
        let ly = lx.mul(&lz);
        let mut best = usize::MAX;
        for rep in [lx, ly, lz] {
            for op in coset::GroupWalk::new(rep, &self.generators) {
                best = best.min(op.weight());
            }
        }
        Ok(best)
    }

    pub fn with_distance(mut self) -> Result<Self, CodeError> {
        self.distance = Some(self.compute_distance()?);
        Ok(self)
    }

    /// Applies `f` to every generator and logical operator.
    pub fn map_operators<F: Fn(&PauliOperator) -> PauliOperator>(&self, f: F) -> Self {
        let generators: Vec<PauliOperator> = self.generators.iter().map(&f).collect();
        Self {
            n: generators.first().map_or(self.n, |g| g.num_qubits()),
            generators,
            logical_x: self.logical_x.as_ref().map(&f),
            logical_z: self.logical_z.as_ref().map(&f),
            distance: self.distance,
        }
    }
}

/// The `[[5,1,3]]` code with generators `XZZXI` and its cyclic shifts.
pub fn five_qubit_code() -> StabilizerCode {
    let gens = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]
        .iter()
        .map(|s| s.parse().expect("static Pauli"))
        .collect();
    StabilizerCode::new(5, gens)
        .and_then(|c| c.with_logicals("XXXXX".parse().unwrap(), "ZZZZZ".parse().unwrap()))
        .expect("five-qubit code is valid")
}

/// A random `[[n,1]]` code: a trivial code scrambled by a seeded random
/// Clifford circuit and qubit permutation.
pub fn random_code(n: usize, seed: u64) -> StabilizerCode {
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    assert!(n >= 1);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut ops: Vec<PauliOperator> = (0..n - 1)
        .map(|q| {
            let mut z = PauliOperator::single(n, q, Pauli::Z);
            if rng.gen::<bool>() {
                z.negate();
            }
            z
        })
        .collect();
    ops.push(PauliOperator::single(n, n - 1, Pauli::X));
    ops.push(PauliOperator::single(n, n - 1, Pauli::Z));
    for _ in 0..4 * n * n {
        match rng.gen_range(0..3) {
            0 => {
                let q = rng.gen_range(0..n);
                ops.iter_mut().for_each(|p| p.conjugate_h(q));
            }
            1 => {
                let q = rng.gen_range(0..n);
                ops.iter_mut().for_each(|p| p.conjugate_s(q));
            }
            _ if n >= 2 => {
                let c = rng.gen_range(0..n);
                let mut t = rng.gen_range(0..n - 1);
                if t >= c {
                    t += 1;
                }
                ops.iter_mut().for_each(|p| p.conjugate_cnot(c, t));
            }
            _ => {}
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let ops: Vec<PauliOperator> = ops.iter().map(|p| p.restrict(&perm)).collect();
    let (gens, logicals) = ops.split_at(n - 1);
    StabilizerCode::new(n, gens.to_vec())
        .and_then(|c| c.with_logicals(logicals[0].clone(), logicals[1].clone()))
        .expect("Clifford image of a valid code is valid")
}

pub fn symplectic_matrix(n: usize, ops: &[PauliOperator]) -> BitMatrix {
    BitMatrix::from_rows(2 * n, ops.iter().map(PauliOperator::symplectic).collect())
}

/// Equality of the groups generated by `a` and `b`, ignoring signs.
pub fn same_group(na: usize, a: &[PauliOperator], nb: usize, b: &[PauliOperator]) -> bool {
    na == nb
        && symplectic_matrix(na, a).row_space_canonical()
            == symplectic_matrix(nb, b).row_space_canonical()
}

/// Writes `op` as a product of generators. Returns `Some(+1)` if `op` is in
/// the group, `Some(-1)` if `-op` is, `None` if neither.
pub fn group_sign(generators: &[PauliOperator], op: &PauliOperator) -> Option<i8> {
    let n = op.num_qubits();
    if generators.is_empty() {
        return op.is_identity_up_to_phase().then(|| op.sign()).flatten();
    }
    let m = symplectic_matrix(n, generators).transpose();
    let sol = m.solve(&op.symplectic())?;
    let mut prod = PauliOperator::identity(n);
    for i in sol.particular.iter_ones() {
        prod.mul_assign(&generators[i]);
    }
    // prod and op share symplectic parts, so their phases differ by 0 or 2
    match (op.phase() + 4 - prod.phase()) % 4 {
        0 => Some(1),
        2 => Some(-1),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            StabilizerCode::new(2, vec![p("XI"), p("ZI")]),
            Err(CodeError::Anticommuting(0, 1))
        );
        assert_eq!(
            StabilizerCode::new(2, vec![p("XX"), p("-XX")]),
            Err(CodeError::Dependent)
        );
        assert_eq!(
            StabilizerCode::new(2, vec![p("iXX")]),
            Err(CodeError::NotHermitian(0))
        );
        assert!(matches!(
            StabilizerCode::new(2, vec![p("XXX")]),
            Err(CodeError::SizeMismatch { index: 0, .. })
        ));
    }

    #[test]
    fn logical_validation() {
        let c = StabilizerCode::new(2, vec![p("ZZ")]).unwrap();
        assert!(c.clone().with_logicals(p("XX"), p("ZI")).is_ok());
        assert!(c.clone().with_logicals(p("XI"), p("ZI")).is_err());
        assert!(c.with_logicals(p("XX"), p("IX")).is_err());
    }

    #[test]
    fn five_qubit_code_properties() {
        let c = five_qubit_code();
        assert_eq!(c.k(), 1);
        assert_eq!(c.compute_distance().unwrap(), 3);
        let (lx, lz) = c.find_logicals().unwrap();
        assert!(!lx.commutes(&lz));
        assert!(c.generators().iter().all(|g| g.commutes(&lx) && g.commutes(&lz)));
    }

    #[test]
    fn group_sign_detects_membership() {
        let gens = vec![p("XX"), p("-ZZ")];
        assert_eq!(group_sign(&gens, &p("XX")), Some(1));
        assert_eq!(group_sign(&gens, &p("ZZ")), Some(-1));
        // XX · (-ZZ) = -(XZ)(XZ) = -(-iY)(-iY) = YY
        assert_eq!(group_sign(&gens, &p("YY")), Some(1));
        assert_eq!(group_sign(&gens, &p("XI")), None);
        assert_eq!(group_sign(&[], &p("II")), Some(1));
        assert_eq!(group_sign(&[], &p("-II")), Some(-1));
    }

    #[test]
    fn random_codes_are_valid() {
        for seed in 0..30 {
            let n = 1 + (seed as usize % 10);
            let c = random_code(n, seed);
            assert_eq!(c.n(), n);
            assert_eq!(c.k(), 1);
            assert!(c.logical_x().is_some());
        }
        assert_eq!(random_code(6, 9), random_code(6, 9));
    }
}
