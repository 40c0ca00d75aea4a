use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Pauli character {ch:?} at position {position}")]
    InvalidPauli { position: usize, ch: char },

    #[error("empty Pauli string")]
    EmptyPauli,

    #[error("qubit count mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("qubit index {index} out of range for {n} qubits")]
    QubitOutOfRange { index: usize, n: usize },

    #[error("CNOT control and target are both qubit {0}")]
    DegenerateCnot(usize),

    #[error("reduction impossible: {0}")]
    ReductionImpossible(String),

    #[error("conjugated member {id} acts outside the group support")]
    SupportViolation { id: usize },

    #[error("schedule violation: {0}")]
    ScheduleViolation(String),

    #[error("{n} qubits exceeds the dense oracle cap of {cap}")]
    OracleCap { n: usize, cap: usize },

    #[error("unknown output format {0:?}")]
    UnknownFormat(String),

    #[error("line {line}: {message}")]
    MalformedLine { line: usize, message: String },

    #[error("invalid lattice: {0}")]
    Lattice(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
