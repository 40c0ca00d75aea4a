//! Fused Pauli-rotation compilation: group Pauli terms, conjugate each group
//! onto one or two qubits with a Clifford frame, and cost the result.
//!
//! Qubit `i` of a Pauli string is its `i`-th letter. Dense matrices put
//! qubit 0 in the leftmost tensor factor.

pub mod circuit;
pub mod clifford;
pub mod error;
pub mod gf2;
pub mod grouping;
pub mod hamlib;
pub mod oracle;
pub mod pauli;
pub mod pipeline;
pub mod synth;

pub use circuit::{CompiledProgram, CostModel, MetricsReport, Mode};
pub use clifford::{CliffordCircuit, CliffordGate};
pub use error::{Error, Result};
pub use pauli::{PauliString, PauliTerm, Sign, Tableau};
pub use pipeline::{compile, verify_program};
