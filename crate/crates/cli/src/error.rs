use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),

    #[error("{0}")]
    Numeric(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for bad input, 3 for numerical or consistency failures, 1 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io { .. } => 1,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

impl From<dtqw_core::Error> for CliError {
    fn from(e: dtqw_core::Error) -> Self {
        use dtqw_core::Error as E;
        match e {
            E::Config(_) | E::SignCondition { .. } | E::IncompatibleWavevector { .. } | E::MalformedTriad(_) => {
                CliError::Config(e.to_string())
            }
            E::Io { path, source } => CliError::Io { path, source },
            other => CliError::Numeric(other.to_string()),
        }
    }
}
