use alloc::string::String;

/// Errors shared by every engine in the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An input violates a precondition (illegal Cartan type, non-reduced
    /// word, illegal braid move, zero denominator, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// The operation is not available for this Cartan type.
    #[error("unsupported type: {0}")]
    Unsupported(String),
    /// A configured size or count cap was exceeded.
    #[error("resource cap exceeded: {0}")]
    Resource(String),
    /// An invariant that should hold by construction failed.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! domain {
    ($($arg:tt)*) => { $crate::Error::Domain(alloc::format!($($arg)*)) };
}
pub(crate) use domain;
