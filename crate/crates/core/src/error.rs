use thiserror::Error;

/// Failure modes shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The input exceeds a desk-scale size cap.
    #[error("size error: {0}")]
    Size(String),
    /// A model or presentation is structurally unusable (singular curve, infinite group, ...).
    #[error("structure error: {0}")]
    Structure(String),
    /// Malformed input data (literals, files, element lists).
    #[error("input error: {0}")]
    Input(String),
    /// An invalid truncated extension specification.
    #[error("spec error: {0}")]
    Spec(String),
    /// A self-diagnostic tripped; indicates a bug or corrupted data.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    /// The message without the category prefix.
    pub fn detail(&self) -> &str {
        match self {
            Error::Domain(m)
            | Error::Size(m)
            | Error::Structure(m)
            | Error::Input(m)
            | Error::Spec(m)
            | Error::Internal(m) => m,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! bail {
    ($kind:ident, $($arg:tt)*) => {
        return Err($crate::error::Error::$kind(format!($($arg)*)))
    };
}
pub(crate) use bail;
