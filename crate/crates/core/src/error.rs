use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero in F")]
    DivisionByZero,
    #[error("specialization hits pole")]
    Pole,
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableIndex { index: usize, nvars: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dlog of zero")]
    DlogOfZero,
    #[error("zero in F^×")]
    ZeroInMultiplicativeGroup,
    #[error("shape mismatch: {0} vs {1}")]
    ShapeMismatch(String, String),
    #[error("non-generic configuration: {0}")]
    NonGeneric(String),
    #[error("generator argument {0} is not allowed (must avoid 0 and 1)")]
    DegenerateGenerator(String),
    #[error("degenerate argument under permutation {0:?}")]
    DegeneratePermutation(Vec<usize>),
    #[error("invalid projection pair ({0}, {1}); apexes must be two distinct labels from {{0,1,2}}")]
    InvalidPair(usize, usize),
    #[error("degenerate relator parameters: {0}")]
    DegenerateRelator(String),
    #[error("arity mismatch: expected {expected}, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("{0}")]
    Numeric(String),
    #[error("no admissible sample after {0} attempts")]
    SamplingExhausted(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
