use thiserror::Error;

/// Errors produced by parsing and by operation preconditions.
///
/// `Parse` covers malformed input text (with a 1-based line number);
/// everything else is a violated precondition on otherwise well-formed
/// values. The CLI maps the two groups to different exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("carrier size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("element {value} out of range for carrier of size {size}")]
    OutOfRange { value: usize, size: usize },

    #[error("partition is not a congruence: {context}")]
    NotACongruence { context: String },

    #[error("empty subset not allowed: {context}")]
    EmptySubset { context: String },

    #[error("subset is not closed: {context}")]
    NotClosed { context: String },

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("not a {variety}: {context}")]
    NotInVariety { variety: String, context: String },

    #[error("meet(R,S) is not below T (witness pair ({0},{1}))")]
    MeetNotBelow(usize, usize),

    #[error("the accepted language is empty: no syntactic monoid")]
    EmptyLanguage,

    #[error("invalid partition blocks: {0}")]
    BadBlocks(String),
}

impl Error {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// True for errors raised while reading input text rather than by an
    /// operation precondition.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
