use thiserror::Error;

/// Errors raised anywhere in the encode / scan / post-process pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// A register or image size is outside what the simulator accepts.
    #[error("size error: {0}")]
    Size(String),

    /// Malformed arguments: non-unitary gates, overlapping qubits, out-of-range channels.
    #[error("validation error: {0}")]
    Validation(String),

    #[error("qubit index {index} out of range for a {num_qubits}-qubit register")]
    Index { index: usize, num_qubits: usize },

    /// A forced measurement outcome has (numerically) zero probability.
    #[error("measurement error: outcome {outcome} on qubit {qubit} has probability {probability:e}")]
    Measurement {
        qubit: usize,
        outcome: u8,
        probability: f64,
    },

    /// A state does not satisfy the structural precondition of an operation.
    #[error("contract error: {0}")]
    Contract(String),

    /// The input cannot be normalized (e.g. an all-black image for QPIE).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("unsupported or corrupt image: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line tool.
    ///
    /// Input problems map to 2, pipeline contract failures to 3.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Size(_)
            | Error::Validation(_)
            | Error::Format(_)
            | Error::Io(_)
            | Error::DegenerateInput(_) => 2,
            Error::Index { .. } | Error::Measurement { .. } | Error::Contract(_) => 3,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
