use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("index {index} out of range for {bound} {what}")]
    IndexOutOfRange {
        index: usize,
        bound: usize,
        what: &'static str,
    },

    #[error("qubit count mismatch: {left} vs {right}")]
    QubitCountMismatch { left: usize, right: usize },

    #[error("{n_qubits} qubits exceeds the limit of {limit} for {what}")]
    DimensionLimit {
        n_qubits: usize,
        limit: usize,
        what: &'static str,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid record {record}: {message}")]
    InvalidRecord { record: String, message: String },

    #[error("operator is not Hermitian (max imaginary coefficient {max_imag:e})")]
    NonHermitian { max_imag: f64 },

    #[error("measurement of qubit {qubit} has zero probability for outcome {outcome}")]
    ZeroBranch { qubit: usize, outcome: u8 },

    #[error("block {block} ({label}) has zero success probability")]
    ZeroProbabilityBlock { block: usize, label: String },

    #[error("operator annihilated the state (zero vector)")]
    ZeroVector,

    #[error("eigensolver did not converge after {matvecs} matrix-vector products (residual {residual:e})")]
    NoConvergence { matvecs: usize, residual: f64 },

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("invalid excitation: {0}")]
    InvalidExcitation(String),

    #[error("layout error: {0}")]
    Layout(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// True for errors caused by malformed input text.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::InvalidRecord { .. })
    }

    /// True for errors where the physics forbids the requested outcome.
    pub fn is_physics(&self) -> bool {
        matches!(
            self,
            Error::ZeroBranch { .. } | Error::ZeroProbabilityBlock { .. } | Error::ZeroVector
        )
    }
}
