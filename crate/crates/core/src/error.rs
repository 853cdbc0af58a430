use thiserror::Error;

/// Errors raised by the group, enumeration and geometry layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("generator {index} is not an element of the parent group")]
    NotInGroup { index: usize },

    #[error("intersection too large: smaller group has order {order}, cap is {cap}")]
    IntersectionTooLarge { order: u128, cap: u128 },

    #[error("index {index} exceeds the cap of {cap}")]
    IndexTooLarge { index: u128, cap: usize },

    #[error("coset enumeration inconclusive: more than {cap} cosets defined")]
    EnumerationCapped { cap: usize },

    #[error("coset table is incomplete")]
    IncompleteTable,

    #[error("generator {index} is not an involution (order {order})")]
    NotInvolution { index: usize, order: u64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// True when the failure is a resource cap rather than a mathematical verdict.
    pub fn is_inconclusive(&self) -> bool {
        matches!(
            self,
            Error::EnumerationCapped { .. }
                | Error::IntersectionTooLarge { .. }
                | Error::IndexTooLarge { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
