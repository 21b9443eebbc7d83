use thiserror::Error;

/// Failures of the matrix kernel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not nilpotent: power {power} is nonzero")]
    NotNilpotent { power: usize },
    #[error("ragged matrix rows")]
    Ragged,
    #[error("non-finite entry in floating-point matrix")]
    NonFinite,
}

/// Error in one of the textual notations, with a byte offset into the input.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("parse error at {pos}: {msg} (input {input:?})")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
    pub input: String,
}

impl ParseError {
    pub fn new(input: &str, pos: usize, msg: impl Into<String>) -> Self {
        ParseError {
            pos,
            msg: msg.into(),
            input: input.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bracket ({i},{j}) must satisfy i < j; negate the coefficient and swap")]
    UnorderedBracket { i: usize, j: usize },
    #[error("Jacobi identity fails: {0}")]
    Jacobi(String),
    #[error("vector length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("no value assigned to symbol {0}")]
    MissingSymbol(String),
    #[error("symbol {0} must be nonzero")]
    ZeroSymbol(String),
    #[error("block S_{block} has determinant {det}, expected 1")]
    SlDeterminant { block: String, det: String },
    #[error("unknown discrete generator index {0}")]
    UnknownGenerator(usize),
    #[error("{0} parameters supplied, descriptor has {1}")]
    ParameterCount(usize, usize),
    #[error("malformed signed permutation: {0}")]
    BadTuple(String),
    #[error("resulting matrix is singular")]
    SingularResult,
    #[error("group closure exceeded cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("map is not a normal endomorphism")]
    NotNormal,
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("no Krull-Schmidt pairing for component {0}")]
    NoPairing(usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
    #[error("ambiguous catalog name {0:?}; candidates: {1:?}")]
    AmbiguousEntry(String, Vec<String>),
    #[error("parameter constraint violated: {0}")]
    Constraint(String),
    #[error("parameter error: {0}")]
    Parameters(String),
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
