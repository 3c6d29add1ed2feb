use kmweyl_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags, config or input values.
    #[error("{0}")]
    Validation(String),
    /// The computation itself failed (pole, missing recurrence, ...).
    #[error("{0}")]
    Compute(CoreError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) | CliError::Io { .. } => 2,
            CliError::Compute(_) => 3,
        }
    }
}

/// Errors that only mean the input was wrong become validation errors.
impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::UnsupportedRank { .. }
            | CoreError::InvalidDiagram(_)
            | CoreError::DimensionMismatch { .. }
            | CoreError::UnknownLabel(_)
            | CoreError::InvalidBounds { .. }
            | CoreError::InvalidFactorization(_)
            | CoreError::BasisTooLarge { .. } => CliError::Validation(e.to_string()),
            other => CliError::Compute(other),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Validation(msg.into()))
}
