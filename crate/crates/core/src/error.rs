use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("operation requires an odd prime, got p = {0}")]
    OddPrimeRequired(u32),
    #[error("operation is not defined over the rationals")]
    RationalsNotSupported,
    #[error("index word is not valid for p = {p}: {reason}")]
    BadWord { p: u32, reason: String },
    #[error("index word is not admissible")]
    NonAdmissible,
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("operands belong to different algebras")]
    MixedAlgebra,
    #[error("cannot enumerate monomials: degree-0 generators present without an exponent cap")]
    UnboundedDegreeZero,
    #[error("cell module has no bottom cell")]
    MissingBottomCell,
    #[error("bottom cell `{0}` must be the unique degree-0 class")]
    BadBottomCell(String),
    #[error("derivation value for `{gen}` has degree {got}, expected {expected}")]
    DegreeInconsistent {
        gen: String,
        got: i64,
        expected: i64,
    },
    #[error("element does not lie in the expected algebra: {0}")]
    ForeignElement(String),
    #[error("generator of degree {degree} lies beyond the truncation degree {cap}")]
    BeyondTruncation { degree: u64, cap: u64 },
    #[error("size bound exceeded: {0}")]
    SizeBound(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
