use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Position-tagged syntax error from one of the text formats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coefficient domains differ: {0} vs {1}")]
    DomainMismatch(String, String),
    #[error("variable alphabets differ: {0} vs {1}")]
    AlphabetMismatch(String, String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("{0} is not invertible in the target domain")]
    NotInvertible(String),
    #[error("matrix is not square ({rows} rows, row of length {cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is empty")]
    EmptyMatrix,
    #[error("expected size {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("transform is singular")]
    SingularTransform,
    #[error("variable `{0}` occurs in neither polynomial")]
    VariableAbsent(String),
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("expected a homogeneous form of degree {expected}: {what}")]
    WrongDegree { what: String, expected: u32 },
    #[error("characteristic 2 is not supported here (the cubic has coefficients 2)")]
    CharacteristicTwo,
    #[error("the cubic does not contain the line (nonzero {0} coefficient)")]
    LineNotContained(String),
    #[error("all entries of the matrix are zero")]
    ZeroMatrix,
    #[error("exhaustive search needs a finite field; reduce modulo a prime with --field fp:<p>")]
    RationalSearch,
    #[error("point is not a zero of the curve")]
    PointNotOnCurve,
    #[error("point is a smooth point of the curve")]
    SmoothPoint,
    #[error("the curves share a component{0}")]
    CommonComponent(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cover graph is disconnected")]
    Disconnected,
    #[error("invalid cover graph: {0}")]
    InvalidGraph(String),
    #[error("degenerate span: points are linearly dependent")]
    DegenerateSpan,
    #[error("cohomological degree {0} outside 0..=2")]
    CohomologyIndex(u8),
    #[error("{0}")]
    Parse(#[from] ParseError),
}
