use thiserror::Error;

/// Everything that can go wrong while building or analyzing a group.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("generator {generator} is not a permutation of 0..{degree}")]
    NotAPermutation { generator: usize, degree: usize },

    #[error("group order exceeds the configured maximum of {limit}")]
    OrderCapExceeded { limit: usize },

    #[error("invalid metacyclic parameters (m={m}, n={n}, r={r}): {reason}")]
    InvalidMetacyclicParameters {
        m: u64,
        n: u64,
        r: u64,
        reason: String,
    },

    #[error("{0} is not an odd prime")]
    NotAPrime(u64),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("element index {index} out of range for a group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("center has more than {limit} subgroups")]
    CenterTooLarge { limit: usize },

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
