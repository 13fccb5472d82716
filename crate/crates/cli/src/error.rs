use std::path::Path;

/// Failure of a command; [`CliError::exit_code`] maps it to the process status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    /// A required input exists but cannot be parsed.
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn io(path: impl AsRef<Path>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }

    /// 2 for usage errors, 3 for unreadable inputs, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io { .. } | CliError::Input(_) => 3,
            CliError::Failed(_) => 1,
        }
    }

    /// Row status for per-job failures in a benchmark run.
    pub fn status(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "error:usage",
            CliError::Io { .. } => "error:io",
            CliError::Input(_) => "error:input",
            CliError::Failed(_) => "error:model",
        }
    }
}
