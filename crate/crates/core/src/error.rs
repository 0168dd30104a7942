use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },

    #[error("duplicate tope {tope} (lines {first} and {second})")]
    DuplicateTope {
        tope: String,
        first: usize,
        second: usize,
    },

    #[error("tope {tope} is listed but its negation is not")]
    SymmetryViolation { tope: String },

    #[error("tope set fails validation: {0}")]
    ValidationFailure(String),

    #[error("element {element} outside ground set 1..={t}")]
    ElementOutOfRange { element: usize, t: usize },

    #[error("tope index {index} outside 0..{len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("the given tope set is not a committee")]
    NotACommittee,

    #[error("the given element set is not convex")]
    NotConvex,

    #[error("budget `{budget}` exceeded: need {needed}, limit {limit}")]
    CapExceeded {
        budget: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("family contains the empty set; its blocker is undefined")]
    EmptyMember,

    #[error("family does not cover the ground set")]
    DoesNotCover,

    #[error("constraint violated: {0}")]
    ConstraintViolation(String),

    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),

    #[error("cardinality k={k} outside the admissible range {lo}..={hi}")]
    OutOfRangeK { k: usize, lo: usize, hi: usize },

    #[error("dimension {dim} exceeds the supported bound {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("no admissible configuration after {attempts} draws")]
    RetryBudgetExceeded { attempts: usize },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("arithmetic overflow in exact accumulator")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn cap(budget: &'static str, needed: impl TryInto<u128>, limit: impl TryInto<u128>) -> Error {
    Error::CapExceeded {
        budget,
        needed: needed.try_into().unwrap_or(u128::MAX),
        limit: limit.try_into().unwrap_or(u128::MAX),
    }
}

/// Checked `acc += term` for the signed exact accumulators.
#[inline]
pub(crate) fn acc_add(acc: i128, term: i128) -> Result<i128> {
    acc.checked_add(term).ok_or(Error::Overflow)
}

#[inline]
pub(crate) fn acc_mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow)
}
