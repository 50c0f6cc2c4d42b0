use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomials belong to different variable tables")]
    TableMismatch,

    #[error("invalid variable table: {0}")]
    InvalidTable(String),

    #[error("variable `{0}` has no image in the substitution")]
    UnboundVariable(String),

    #[error("image of `{var}` must be homogeneous of degree {expected}")]
    Grading { var: String, expected: u32 },

    #[error("`{dividend}` is not divisible by `{factor}`")]
    NotDivisible { dividend: String, factor: String },

    #[error("`{0}` is not a difference of two distinct degree-1 generators")]
    BadLinearFactor(String),

    #[error("`{0}` has zero constant term and cannot be inverted as a series")]
    NotInvertible(String),

    #[error("{0}")]
    Domain(String),

    #[error("polynomial is not symmetric in the Chern roots: {0}")]
    Symmetry(String),

    #[error("localization sum failed to be a polynomial: {0}")]
    LocalizationIntegrality(String),

    #[error("{name} is out of range at rank {rank}")]
    Arity { name: String, rank: usize },

    #[error("variable `{0}` is not supported here")]
    UnsupportedVariable(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    Arity,
    Exponent,
}

/// A diagnostic from the expression front end, positioned at a byte offset
/// of the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{} error at byte {offset}: {message}", kind_label(.kind))]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub offset: usize,
    pub message: String,
}

fn kind_label(kind: &ParseErrorKind) -> &'static str {
    match kind {
        ParseErrorKind::Syntax => "syntax",
        ParseErrorKind::Arity => "arity",
        ParseErrorKind::Exponent => "exponent",
    }
}

impl ParseError {
    pub(crate) fn new(kind: ParseErrorKind, offset: usize, message: impl Into<String>) -> Self {
        Self {
            kind,
            offset,
            message: message.into(),
        }
    }
}
