use std::path::PathBuf;

/// Failures of the command-line pipeline, each tied to a process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{source_name}, line {line}: {message}")]
    Parse { source_name: String, line: usize, message: String },
    #[error("data quality: {0}")]
    Quality(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] lrdkit::Error),
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    /// 1 for usage and configuration mistakes, 2 for unusable input data,
    /// 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        use lrdkit::Error as E;
        match self {
            CliError::Usage(_) => 1,
            CliError::Parse { .. } | CliError::Quality(_) | CliError::Io { .. } => 2,
            CliError::Core(E::ParameterDomain(_) | E::BandTooNarrow(_)) => 1,
            CliError::Core(E::Constraint(_) | E::Degenerate(_)) => 2,
            CliError::Core(E::Numerical(_)) => 3,
        }
    }
}
