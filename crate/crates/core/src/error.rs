use thiserror::Error;

/// Errors surfaced by the exact-arithmetic and algebra layers.
///
/// Every failure is loud: no operation silently degrades precision or
/// returns a partially verified object.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("scalar does not belong to the field context: {0}")]
    FieldMismatch(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular")]
    Singular,

    #[error("linear system is inconsistent")]
    Inconsistent,

    #[error("unsupported prime for this field: {0}")]
    UnsupportedPrime(String),

    #[error("element has negative valuation at the prime: {0}")]
    NegativeValuation(String),

    #[error("data is not integral at the prime: {0}")]
    NotIntegralAtPrime(String),

    #[error("modules live over different algebras")]
    AlgebraMismatch,

    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),

    #[error("p-adic precision cap exhausted at {0} digits")]
    PrecisionExhausted(u32),

    #[error("bilinear form is degenerate: {0}")]
    NotFrobenius(String),

    #[error("algebra is not split over its ground field: {0}")]
    NotSplit(String),

    #[error("map is not a module endomorphism")]
    NotEndomorphism,

    #[error("intertwiner system has no invertible solution: {0}")]
    NoIntertwiner(String),

    #[error("no splitting element found after the deterministic schedule: {0}")]
    SplittingFailure(String),

    #[error("no linear factor over a characteristic-zero field; residual has degree {0}")]
    FactorizationIncomplete(usize),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("Coxeter group enumeration exceeded the element cap {0}")]
    GroupTooLarge(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
