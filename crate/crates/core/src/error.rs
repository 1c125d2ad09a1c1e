use std::fmt;

use thiserror::Error;

/// Errors produced by the algebra layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VarCountMismatch { left: usize, right: usize },

    #[error("variable index {index} out of range for {nvars} variables")]
    VarIndexOutOfRange { index: usize, nvars: usize },

    #[error("matrix dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("a polynomial map needs one component per variable (got {components} components over {nvars} variables)")]
    MapShape { components: usize, nvars: usize },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("weight {weight} exceeds the truncation bound {bound}")]
    WeightOverBound { weight: u32, bound: u32 },

    #[error("truncation bounds differ: {left} vs {right}")]
    BoundMismatch { left: u32, right: u32 },

    #[error("not a Lie element: {residual_terms} residual terms remain after reduction, starting at word {first_word:?}")]
    NotLieElement {
        residual_terms: usize,
        first_word: Vec<u32>,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("specialized image does not close: {0}")]
    NotClosed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A polynomial parse failure. `position` is a 0-based character offset into
/// the parsed text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at position {position}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownVariable(String),
    NegativeExponent,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            ParseErrorKind::UnknownVariable(name) => write!(f, "unknown variable `{name}`"),
            ParseErrorKind::NegativeExponent => f.write_str("negative exponent"),
        }
    }
}
