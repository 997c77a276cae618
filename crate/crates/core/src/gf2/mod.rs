//! Exact GF(2) linear algebra and binary-symplectic Pauli arithmetic.

mod bitmatrix;
mod bitvec;
mod pauli;

pub use bitmatrix::{BitMatrix, Rref, Solution};
pub use bitvec::BitVector;
pub use pauli::{Pauli, PauliOperator, PauliParseError};
