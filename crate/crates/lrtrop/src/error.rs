use lrtrop_core::Error;

/// Command failures, each with a fixed exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Unknown verb, unknown option or malformed option value.
    #[error("usage: {0}")]
    Usage(String),
    /// The input is well-formed but outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A configured cap was exceeded before the computation finished.
    #[error("resource cap exceeded: {0}")]
    Resource(String),
    /// A check that must hold by construction failed.
    #[error("internal error: {0}")]
    Internal(String),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INTERNAL: i32 = 70;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
            CliError::Resource(_) => EXIT_RESOURCE,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(m) => CliError::Domain(m),
            Error::Unsupported(m) => CliError::Domain(format!("unsupported: {m}")),
            Error::Resource(m) => CliError::Resource(m),
            Error::Internal(m) => CliError::Internal(m),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
