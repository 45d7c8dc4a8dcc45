use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Model(#[from] hypcascade::Error),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed archive: {0}")]
    Archive(String),
}

impl CliError {
    /// 2 for bad invocations, 1 for everything else that went wrong.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Model(hypcascade::Error::InvalidParams(_)) => 2,
            _ => 1,
        }
    }

    pub fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}
