use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected length {expected}, got {found}")]
    Dimension { expected: usize, found: usize },

    /// A structural precondition on codes failed (e.g. a claimed subcode is not one).
    #[error("structure error: {0}")]
    Structure(String),

    /// Exhaustive enumeration or simulation would exceed a configured cap.
    #[error("resource cap exceeded: {what} needs {needed}, cap is {cap}")]
    Resource {
        what: &'static str,
        needed: usize,
        cap: usize,
    },

    #[error("minimization over an empty set: {0}")]
    EmptySet(&'static str),

    #[error("parameter out of range: {0}")]
    Parameter(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn dimension(expected: usize, found: usize) -> Self {
        Error::Dimension { expected, found }
    }

    /// True for errors caused by enumeration/simulation caps.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource { .. })
    }
}
