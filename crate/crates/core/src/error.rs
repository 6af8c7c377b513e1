use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truncation order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),

    #[error("alphabet mismatch: `{0}` vs `{1}`")]
    AlphabetMismatch(String, String),

    #[error("generator `{0}` has no image under the map")]
    MissingImage(String),

    #[error("tensor slot {0} out of range")]
    SlotOutOfRange(u8),

    #[error("rewrite step limit of {0} exceeded")]
    StepLimit(u64),

    #[error("rule `{0}` does not decrease the monomial order")]
    NonDecreasingRule(String),

    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("unknown symbol `{name}` at line {line}, column {col}")]
    UnknownSymbol { name: String, line: usize, col: usize },

    #[error("invalid presentation: {0}")]
    Presentation(String),

    #[error("generator `{0}` is excluded from the structure maps")]
    Excluded(String),

    #[error("undetermined: {0}")]
    Undetermined(String),

    #[error("not invertible: {0}")]
    NotInvertible(String),

    #[error("solver: {0}")]
    Solver(String),

    #[error("usage: {0}")]
    Usage(String),
}

impl Error {
    pub fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Syntax { line, col, msg: msg.into() }
    }

    /// True for errors caused by bad input rather than a failed check.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::UnknownSymbol { .. }
                | Error::Usage(_)
                | Error::NonDecreasingRule(_)
                | Error::Presentation(_)
                | Error::OrderMismatch(..)
                | Error::AlphabetMismatch(..)
        )
    }

    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::StepLimit(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
