use std::fmt;

use thiserror::Error;

/// Line/column position inside parsed text, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl Position {
    pub fn new(line: usize, column: usize) -> Self {
        Position { line, column }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// A syntax error in an expression or a presentation file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {position}: {message}{}", expected_suffix(.expected))]
pub struct ParseError {
    pub position: Position,
    pub message: String,
    pub expected: Option<String>,
}

fn expected_suffix(expected: &Option<String>) -> String {
    match expected {
        Some(e) => format!(" (expected {e})"),
        None => String::new(),
    }
}

impl ParseError {
    pub fn new(position: Position, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
            expected: None,
        }
    }

    pub fn expected(mut self, what: impl Into<String>) -> Self {
        self.expected = Some(what.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("rule `{rule}` is not degree-homogeneous: left side has degree {lhs}, right side has degree {rhs}")]
    InhomogeneousRule { rule: String, lhs: u32, rhs: u32 },

    #[error("rewrite rules do not terminate: reduction of `{monomial}` cycles")]
    NonTerminating { monomial: String },

    #[error(
        "rewrite system is not confluent at `{monomial}`: via `{first}` it reduces to `{first_nf}`, via `{second}` to `{second_nf}`"
    )]
    NonConfluent {
        monomial: String,
        first: String,
        first_nf: String,
        second: String,
        second_nf: String,
    },

    #[error("integral monomial `{monomial}` is invalid: {reason}")]
    InvalidIntegral { monomial: String, reason: String },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("unknown identifier `{0}`: neither a generator nor a parameter")]
    UnknownIdentifier(String),

    #[error("operands belong to different ring presentations")]
    PresentationMismatch,

    #[error("incomplete presentation: no integral declared for top-degree monomial `{0}`")]
    IncompletePresentation(String),

    #[error(
        "cannot integrate `{0}` over the base: integrate after pushforward to remove curve classes"
    )]
    IntegrateAfterPushforward(String),

    #[error("presentation declares no fiber class")]
    NoFiberClass,

    #[error("presentation declares no integrals")]
    NoIntegrals,

    #[error("value is not constant: {0}")]
    NotConstant(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("total Chern class must have constant term 1, found `{0}`")]
    BadChernClass(String),

    #[error("invalid preset: {0}")]
    InvalidPreset(String),

    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),

    #[error("{0}")]
    OutOfRange(String),

    #[error("empty stratum: {0}")]
    EmptyStratum(String),
}

impl Error {
    /// Syntax errors as opposed to domain errors.
    pub fn is_syntax(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
