use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree must be at least 1")]
    ZeroDegree,

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("generator list is empty")]
    EmptyGenerators,

    #[error("group too large to enumerate: order {order} exceeds limit {limit}")]
    TooLargeToEnumerate { order: u64, limit: u64 },

    #[error("element {0} is not in the group")]
    NotInGroup(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("normal lattice too large: more than {cap} normal subgroups")]
    NormalLatticeTooLarge { cap: usize },

    #[error("operation undefined for the trivial group")]
    TrivialGroup,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("element {0} is not a pi-element")]
    NotAPiElement(String),

    #[error("identity element not allowed here")]
    IdentityElement,

    #[error("action domain is empty")]
    EmptyDomain,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{id}: expected order {expected}, generators give {actual}")]
    OrderMismatch {
        id: String,
        expected: u64,
        actual: u64,
    },

    #[error("duplicate catalog id {0}")]
    DuplicateId(String),

    #[error("unknown catalog id {0}")]
    UnknownId(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// Error positioned inside a single line of input.
    pub(crate) fn parse_at(column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line: 1,
            column,
            message: message.into(),
        }
    }

    pub(crate) fn on_line(self, line: usize) -> Self {
        match self {
            Error::Parse {
                column, message, ..
            } => Error::Parse {
                line,
                column,
                message,
            },
            other => other,
        }
    }
}
