use thiserror::Error;

/// Every fallible operation in the crate returns this error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("polynomial not divisible")]
    NotDivisible,
    #[error("closed form not divisible by x - 1")]
    NonDivisible,
    #[error("line direction is proportional to its base point")]
    DegeneratePair,
    #[error("all components vanish identically")]
    AllZero,
    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),
    #[error("parameters are not in reversal normal form: {0}")]
    NotNormalized(String),
    #[error("independent line measurements disagree at step {step}: {first} vs {second}")]
    LineDisagreement { step: usize, first: u64, second: u64 },
    #[error("image of subspace is not linear")]
    NonLinearImage,
    #[error("every sample point was indeterminate")]
    SampleFailure,
    #[error("self-check failed: {0}")]
    SelfCheckFailed(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("orbit kept hitting the indeterminacy locus")]
    OrbitHitIndeterminacy,
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("cyclotomic order {0} is not supported by the modular reduction")]
    UnsupportedOrder(u32),
    #[error("value is not invertible modulo the working prime")]
    BadReduction,
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
