use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::BitVector;

/// An `n`-qubit Pauli operator in binary symplectic form.
///
/// The operator represented is `i^phase · X^x · Z^z`, where `X^x` and `Z^z`
/// are tensor products with the X factor written to the left of the Z factor
/// on each qubit. With this convention `Y = i·X·Z`, so `X·Z = −i·Y`.
///
/// An operator is Hermitian iff `phase ≡ |x ∧ z| (mod 2)`; its eigenvalue sign
/// is then `i^(phase − |x ∧ z|) ∈ {+1, −1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    x: BitVector,
    z: BitVector,
    phase: u8,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PauliParseError {
    #[error("empty Pauli string")]
    Empty,
    #[error("invalid Pauli character {0:?}")]
    InvalidChar(char),
}

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        Self {
            x: BitVector::zeros(n),
            z: BitVector::zeros(n),
            phase: 0,
        }
    }

    /// Builds `i^phase · X^x · Z^z` directly from its symplectic parts.
    pub fn from_parts(x: BitVector, z: BitVector, phase: u8) -> Self {
        assert_eq!(x.len(), z.len(), "X and Z parts differ in length");
        Self {
            x,
            z,
            phase: phase % 4,
        }
    }

    /// The Hermitian operator with symplectic parts `(x|z)` and sign `+1`.
    pub fn hermitian(x: BitVector, z: BitVector) -> Self {
        let phase = (x.overlap(&z) % 4) as u8;
        Self::from_parts(x, z, phase)
    }

    pub fn single(n: usize, qubit: usize, p: Pauli) -> Self {
        let mut op = Self::identity(n);
        op.set(qubit, p);
        op
    }

    /// `X` on every qubit of `support`.
    pub fn x_on<I: IntoIterator<Item = usize>>(n: usize, support: I) -> Self {
        Self::from_parts(BitVector::from_support(n, support), BitVector::zeros(n), 0)
    }

    /// `Z` on every qubit of `support`.
    pub fn z_on<I: IntoIterator<Item = usize>>(n: usize, support: I) -> Self {
        Self::from_parts(BitVector::zeros(n), BitVector::from_support(n, support), 0)
    }

    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &BitVector {
        &self.x
    }

    pub fn z(&self) -> &BitVector {
        &self.z
    }

    /// Exponent `k` of the global factor `i^k`.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    /// Symplectic row `(x | z)` of length `2n`.
    pub fn symplectic(&self) -> BitVector {
        self.x.concat(&self.z)
    }

    pub fn get(&self, qubit: usize) -> Pauli {
        match (self.x.get(qubit), self.z.get(qubit)) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    /// Replaces the factor on `qubit` while keeping the Hermitian sign unchanged.
    pub fn set(&mut self, qubit: usize, p: Pauli) {
        let old_y = self.x.get(qubit) && self.z.get(qubit);
        let (x, z) = match p {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        };
        self.x.set(qubit, x);
        self.z.set(qubit, z);
        let new_y = x && z;
        self.phase = (self.phase + 4 + new_y as u8 - old_y as u8) % 4;
    }

    pub fn support(&self) -> BitVector {
        self.x.or(&self.z)
    }

    pub fn weight(&self) -> usize {
        self.support().weight()
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn is_hermitian(&self) -> bool {
        (self.phase as usize + self.x.overlap(&self.z)).is_multiple_of(2)
    }

    /// `Some(+1)` or `Some(−1)` for Hermitian operators, `None` otherwise.
    pub fn sign(&self) -> Option<i8> {
        match self.coefficient() {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }

    /// Exponent `c` such that the operator equals `i^c` times the product of
    /// its single-qubit letters (with `Y` as the Hermitian Pauli Y).
    fn coefficient(&self) -> u8 {
        let ys = (self.x.overlap(&self.z) % 4) as u8;
        (self.phase + 4 - ys) % 4
    }

    pub fn negate(&mut self) {
        self.phase = (self.phase + 2) % 4;
    }

    pub fn negated(&self) -> Self {
        let mut p = self.clone();
        p.negate();
        p
    }

    /// Same Pauli letters with sign `+1`.
    pub fn unsigned(&self) -> Self {
        Self::hermitian(self.x.clone(), self.z.clone())
    }

    /// Operator product `self · other` with the phase tracked exactly.
    ///
    /// # Panics
    /// Panics if the operators act on different numbers of qubits.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.num_qubits(),
            other.num_qubits(),
            "Pauli size mismatch"
        );
        let swap = (self.z.overlap(&other.x) % 2) as u8;
        Self {
            x: &self.x ^ &other.x,
            z: &self.z ^ &other.z,
            phase: (self.phase + other.phase + 2 * swap) % 4,
        }
    }

    pub fn mul_assign(&mut self, other: &Self) {
        *self = self.mul(other);
    }

    /// True iff the symplectic product `x·z' + z·x'` vanishes.
    ///
    /// # Panics
    /// Panics if the operators act on different numbers of qubits.
    pub fn commutes(&self, other: &Self) -> bool {
        assert_eq!(
            self.num_qubits(),
            other.num_qubits(),
            "Pauli size mismatch"
        );
        (self.x.overlap(&other.z) + self.z.overlap(&other.x)).is_multiple_of(2)
    }

    /// Keeps the listed qubits, in the given order. The Hermitian sign is kept.
    pub fn restrict(&self, qubits: &[usize]) -> Self {
        let x = self.x.select(qubits);
        let z = self.z.select(qubits);
        let c = self.coefficient();
        let ys = (x.overlap(&z) % 4) as u8;
        Self::from_parts(x, z, c + ys)
    }

    /// Embeds into `n` qubits, sending qubit `k` to `positions[k]`.
    pub fn embed(&self, n: usize, positions: &[usize]) -> Self {
        let x = self.x.scatter(n, positions);
        let z = self.z.scatter(n, positions);
        Self::from_parts(x, z, self.phase)
    }

    /// Conjugation `H P H` by a Hadamard on `q`.
    pub fn conjugate_h(&mut self, q: usize) {
        let (x, z) = (self.x.get(q), self.z.get(q));
        // X^x Z^z -> Z^x X^z = (-1)^{xz} X^z Z^x
        self.x.set(q, z);
        self.z.set(q, x);
        if x && z {
            self.phase = (self.phase + 2) % 4;
        }
    }

    /// Conjugation `S P S†` by a phase gate on `q` (`X → Y`, `Z → Z`).
    pub fn conjugate_s(&mut self, q: usize) {
        if self.x.get(q) {
            // X Z^z -> i X Z^(z+1)
            self.z.flip(q);
            self.phase = (self.phase + 1) % 4;
        }
    }

    /// Conjugation by an arbitrary Pauli `g`: `g P g† = ±P`.
    pub fn conjugate_pauli(&mut self, g: &Self) {
        if !self.commutes(g) {
            self.negate();
        }
    }

    /// Conjugation by a controlled-`target` unitary
    /// `|0⟩⟨0| ⊗ I + |1⟩⟨1| ⊗ target` with control qubit `control`.
    ///
    /// # Panics
    /// Panics if `target` is not Hermitian or acts on `control`.
    pub fn conjugate_controlled(&mut self, control: usize, target: &Self) {
        assert!(target.is_hermitian(), "controlled operator must be Hermitian");
        assert!(
            !target.support().get(control),
            "control qubit {control} lies in the support of the controlled operator"
        );
        let n = self.num_qubits();
        let mut affected = vec![control];
        affected.extend(target.support().iter_ones());
        let zc = Self::single(n, control, Pauli::Z);
        self.conjugate_with(&affected, |q, is_x| {
            let letter = Self::single(n, q, if is_x { Pauli::X } else { Pauli::Z });
            if q == control {
                if is_x {
                    letter.mul(target)
                } else {
                    letter
                }
            } else if letter.commutes(target) {
                letter
            } else {
                zc.mul(&letter)
            }
        });
    }

    /// Conjugation by CNOT with the given control and target.
    pub fn conjugate_cnot(&mut self, control: usize, target: usize) {
        let t = Self::single(self.num_qubits(), target, Pauli::X);
        self.conjugate_controlled(control, &t);
    }

    /// Conjugation by CZ on `a`, `b`.
    pub fn conjugate_cz(&mut self, a: usize, b: usize) {
        let t = Self::single(self.num_qubits(), b, Pauli::Z);
        self.conjugate_controlled(a, &t);
    }

    /// Applies a Clifford given by the images of the single-qubit `X` and `Z`
    /// generators on `affected` qubits; all other qubits map to themselves.
    fn conjugate_with<F>(&mut self, affected: &[usize], image: F)
    where
        F: Fn(usize, bool) -> Self,
    {
        let mut out = self.clone();
        for &q in affected {
            out.x.set(q, false);
            out.z.set(q, false);
        }
        for &q in affected {
            if self.x.get(q) {
                out = out.mul(&image(q, true));
            }
            if self.z.get(q) {
                out = out.mul(&image(q, false));
            }
        }
        *self = out;
    }

    /// Compact listing of non-identity factors, e.g. `-X4Z2Z3`, using the
    /// supplied labels for qubits.
    pub fn to_sparse_string<L: fmt::Display>(&self, labels: &[L]) -> String {
        let mut s = String::new();
        match self.coefficient() {
            0 => {}
            1 => s.push('i'),
            2 => s.push('-'),
            _ => s.push_str("-i"),
        }
        let mut any = false;
        for (q, label) in labels.iter().enumerate().take(self.num_qubits()) {
            let c = match self.get(q) {
                Pauli::I => continue,
                Pauli::X => 'X',
                Pauli::Y => 'Y',
                Pauli::Z => 'Z',
            };
            any = true;
            s.push(c);
            s.push_str(&label.to_string());
        }
        if !any {
            s.push('I');
        }
        s
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.coefficient() {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        })?;
        for q in 0..self.num_qubits() {
            f.write_str(match self.get(q) {
                Pauli::I => "I",
                Pauli::X => "X",
                Pauli::Y => "Y",
                Pauli::Z => "Z",
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl FromStr for PauliOperator {
    type Err = PauliParseError;

    /// Accepts an optional `+`, `-`, `−`, `i`, `+i`, `-i` prefix followed by
    /// letters from `IXYZ`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (coef, body) = if let Some(rest) = s.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix("-i").or_else(|| s.strip_prefix("−i")) {
            (3, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest)
        } else if let Some(rest) = s.strip_prefix('-').or_else(|| s.strip_prefix('−')) {
            (2, rest)
        } else if let Some(rest) = s.strip_prefix('i') {
            (1, rest)
        } else {
            (0, s)
        };
        if body.is_empty() {
            return Err(PauliParseError::Empty);
        }
        let n = body.chars().count();
        let mut op = Self::identity(n);
        for (q, c) in body.chars().enumerate() {
            let p = match c {
                'I' | '_' => Pauli::I,
                'X' => Pauli::X,
                'Y' => Pauli::Y,
                'Z' => Pauli::Z,
                other => return Err(PauliParseError::InvalidChar(other)),
            };
            op.set(q, p);
        }
        op.phase = (op.phase + coef) % 4;
        Ok(op)
    }
}
