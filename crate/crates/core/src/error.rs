use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied parameter violates an operation's precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The exact solver or an enumeration oracle was asked for an instance
    /// larger than its configured limits.
    #[error("resource guard: {what} (limit {limit}, requested {requested}); {hint}")]
    ResourceGuard {
        what: &'static str,
        limit: u64,
        requested: u64,
        hint: &'static str,
    },

    /// `s = k t / n` is not an integer, so bottom and top segments do not align.
    #[error("segment size t={t} gives non-integral s = {k}*{t}/{n}; nearby valid t: {suggestions:?}")]
    NonIntegralSegment {
        n: usize,
        k: usize,
        t: usize,
        suggestions: Vec<usize>,
    },

    /// A parameter range that is empty for the requested `n`.
    #[error("empty parameter range: {0}")]
    EmptyRange(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("serialization: {0}")]
    Serialization(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::Io(io),
            other => Error::Serialization(format!("{other:?}")),
        }
    }
}
