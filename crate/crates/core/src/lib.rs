//! Graph-state quantum secret sharing.
//!
//! - [`gf2`]: packed GF(2) vectors and matrices, and Pauli operators in
//!   symplectic form with exact phases.
//! - [`graph`]: simple graphs, odd neighbourhoods, bipartite graphs with
//!   orthogonal biadjacency, edge-list I/O.
//! - [`code`]: stabilizer codes, the block standard form, and conversion
//!   between `[[n,1]]` codes and graph schemes.
//! - [`access`]: access structures by linear algebra, by encoded-Z supports,
//!   and by dense simulation.
//! - [`sim`]: tableau simulation of the sharing and recovery circuits.
//! - [`oracle`]: dense state vectors used as ground truth.
//!
//! Player sets are [`graph::VertexSet`]s; vertex and qubit `v` of a scheme
//! are the same index.

pub mod access;
pub mod code;
pub mod gf2;
pub mod graph;
pub mod oracle;
pub mod sim;
