use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("partition {0:?} is not weakly decreasing with positive parts")]
    InvalidPartition(Vec<u32>),
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: String, found: String },
    #[error("p-adic valuation of zero is undefined")]
    ZeroValuation,
    #[error("presented group is infinite (invariant factor 0)")]
    InfiniteCokernel,
    #[error("{what} needs {needed}, above the limit of {limit}")]
    BoundExceeded {
        what: &'static str,
        needed: String,
        limit: u64,
    },
    #[error("value {0} does not fit in a machine word")]
    Overflow(String),
    #[error("element {0:?} is not a valid element of the group")]
    InvalidElement(Vec<u64>),
    #[error("extensions do not share (p, lambda, mu)")]
    MismatchedParameters,
    #[error("entry ({row}, {col}) = {value} is not divisible by {divisor}")]
    NotDivisible {
        row: usize,
        col: usize,
        value: String,
        divisor: String,
    },
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// Stable short code, used in CLI error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not_prime",
            Error::InvalidPartition(_) => "invalid_partition",
            Error::ShapeMismatch { .. } => "shape_mismatch",
            Error::ZeroValuation => "zero_valuation",
            Error::InfiniteCokernel => "infinite_cokernel",
            Error::BoundExceeded { .. } => "bound_exceeded",
            Error::Overflow(_) => "overflow",
            Error::InvalidElement(_) => "invalid_element",
            Error::MismatchedParameters => "mismatched_parameters",
            Error::NotDivisible { .. } => "not_divisible",
            Error::Parse(_) => "parse_error",
            Error::InvariantViolation(_) => "invariant_violation",
        }
    }

    pub(crate) fn shape(expected: impl ToString, found: impl ToString) -> Self {
        Error::ShapeMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }

    pub(crate) fn bound(what: &'static str, needed: impl ToString, limit: u64) -> Self {
        Error::BoundExceeded {
            what,
            needed: needed.to_string(),
            limit,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
