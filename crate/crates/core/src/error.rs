use thiserror::Error;

/// Errors produced by parsers, constructors and checkers across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid generator name {0:?} (expected nonempty [A-Za-z0-9_]+)")]
    InvalidSymbol(String),

    #[error("malformed table: row {row} has {got} entries, expected {expected}")]
    RaggedTable { row: usize, got: usize, expected: usize },

    #[error("malformed table: entry ({row}, {col}) = {value} is out of range for size {size}")]
    TableEntry {
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },

    #[error("not a quandle: {0}")]
    NotAQuandle(String),

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("unbound generator `{0}` in assignment")]
    UnboundGenerator(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),

    #[error("cyclic substitution: `{0}` occurs in its own replacement")]
    CyclicSubstitution(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("inconsistent diagram: {0}")]
    Diagram(String),

    #[error("movie script error at event {index}: {message}")]
    Script { index: usize, message: String },

    #[error("invalid ribbon concordance data: {0}")]
    Concordance(String),

    #[error("invalid parameter: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse_at(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// True for errors that indicate unparseable input rather than
    /// well-formed input describing an invalid object.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}
