use dsh_core::DshError;

/// Errors carrying the process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
    #[error("tail scan verdict {0}")]
    Unmatched(String),
    #[error("invariant failure: {0}")]
    Invariant(String),
    #[error("{0}")]
    Numerics(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Parse(_) => 2,
            Self::Domain(_) => 3,
            Self::Unmatched(_) => 4,
            Self::Invariant(_) => 5,
            Self::Numerics(_) | Self::Io(_) => 1,
        }
    }
}

impl From<DshError> for CliError {
    fn from(e: DshError) -> Self {
        match e {
            DshError::Parameter(_) => Self::Parse(e.to_string()),
            DshError::Domain(_) | DshError::Precondition(_) | DshError::Pole { .. } => {
                Self::Domain(e.to_string())
            }
            DshError::NonConvergence { .. } | DshError::Quadrature { .. } => {
                Self::Numerics(e.to_string())
            }
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        Self::Numerics(format!("csv: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::Numerics(format!("json: {e}"))
    }
}
