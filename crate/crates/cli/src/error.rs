use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] burnside_core::Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("CSV output: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 1 for usage and parse errors, 2 for failed preconditions, 3 for
    /// internal invariant violations.
    pub fn exit_code(&self) -> u8 {
        use burnside_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Json(_) | CliError::Io { .. } => 1,
            CliError::Core(E::Parse { .. } | E::UnknownLabel(_) | E::InvalidParameter(_)) => 1,
            CliError::Core(E::Invariant(_)) => 3,
            CliError::Core(_) | CliError::Csv(_) => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
