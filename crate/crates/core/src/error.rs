use std::fmt;

/// Position-tagged parse failure for the text formats (bit strings, matrix
/// files, Pauli strings, ring polynomials).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        Self {
            position,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error {0}")]
    Parse(#[from] ParseError),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("X check row {x_row} and Z check row {z_row} anti-commute (H_X H_Z^T != 0)")]
    NotOrthogonal { x_row: usize, z_row: usize },

    #[error("checks are over-complete: {independent} independent checks on {n} qubits")]
    OverComplete { independent: usize, n: usize },

    #[error("tableau rows are linearly dependent")]
    DependentRows,

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("invalid split configuration: {0}")]
    InvalidConfig(String),

    #[error("no gauge decomposition found at any weight below n (last tried w = {last_weight})")]
    SplitFailed { last_weight: usize },

    #[error(
        "combination scan too large: C({pool}, {choose}) = {combinations} exceeds budget {budget}"
    )]
    ResourceBudget {
        pool: usize,
        choose: usize,
        combinations: u128,
        budget: u128,
    },

    #[error("ring size mismatch: {left} vs {right}")]
    RingMismatch { left: usize, right: usize },

    #[error("ring orthogonality fails at entry ({row}, {col})")]
    RingOrthogonality { row: usize, col: usize },

    #[error("lifted construction fails commutation check: {0}")]
    CommutationCheck(String),

    #[error("unknown catalog matrix {0:?}")]
    UnknownCatalog(String),

    #[error("refused: {0}")]
    Refused(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
