use thiserror::Error;

use crate::parse::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right} qubits")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid Pauli string `{0}`")]
    InvalidPauli(String),

    #[error("invalid angle `{0}`")]
    InvalidAngle(String),

    #[error("zero-angle rotations are not representable")]
    ZeroAngle,

    #[error("cannot fuse rotations about different Pauli strings")]
    FusionMismatch,

    #[error("a tableau needs at least one qubit")]
    NoQubits,

    #[error("qubit {qubit} out of range for {num_qubits} qubits")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },

    #[error("duplicate qubit operand {0}")]
    DuplicateQubit(usize),

    #[error("gate `{0}` is not a conjugation target")]
    UnsupportedGate(String),

    #[error("row anticommutes with layer member {0}")]
    AnticommutingInsert(usize),

    #[error("invalid plan: {0}")]
    InvalidPlan(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unknown format `{0}`")]
    UnknownFormat(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
