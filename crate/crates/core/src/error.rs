use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: bad file, unknown vertex, inconsistent labelling.
    #[error("input error: {0}")]
    Input(String),
    /// Well-formed input that does not meet an operation's requirements.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A construction that should have exactly one answer had zero or several.
    #[error("construction failed: {0}")]
    Construction(String),
    /// An enumeration exceeded its `--bound`.
    #[error("bound exceeded: {what} would exceed {bound}")]
    BoundExceeded { what: String, bound: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
