use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid rational literal `{0}`")]
    InvalidRational(String),

    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("duplicate variable `{name}` at {line}:{column}")]
    DuplicateVariable { name: String, line: usize, column: usize },

    #[error("unknown variable `{name}` at {line}:{column}")]
    UnknownVariable { name: String, line: usize, column: usize },

    #[error("polynomials live in different rings")]
    RingMismatch,

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("weight {0} is too large for the monomial order")]
    WeightOverflow(String),

    #[error("reduction did not terminate within {steps} steps (order is not a well-order here)")]
    DivisionDiverged { steps: usize },

    #[error("the order makes `{0}` lead with a constant term; no normal forms exist")]
    UnitLeading(String),

    #[error("coefficient valuation requires weight {expected} on `{variable}`, got {found}")]
    CoefficientValuationMismatch {
        variable: String,
        expected: String,
        found: String,
    },

    #[error("generator `{variable}` has non-finite value")]
    NonfiniteGeneratorValue { variable: String },

    #[error("ideal generator `{generator}` is not mapped into the target ideal")]
    NotAHomomorphism { generator: String },

    #[error("generator dictionaries disagree: {0}")]
    DictionaryMismatch(String),

    #[error("hypothesis fails: {0}")]
    HypothesisFails(String),

    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(String),

    #[error("multiplication is not lower-triangular: {0}")]
    NotLowerTriangular(String),

    #[error("associativity fails on ({a})*({b})*({c})")]
    AssociativityViolation { a: String, b: String, c: String },

    #[error("invalid graded algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid override: {0}")]
    InvalidOverride(String),

    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("product leaves the truncation bound")]
    OutOfTruncation,
}
