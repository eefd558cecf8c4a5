use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("unknown pair {0:?}")]
    UnknownPair(String),

    #[error("unknown algebra {0:?}")]
    UnknownAlgebra(String),

    #[error(transparent)]
    Core(#[from] realflag_core::Error),

    #[error("malformed file: {0}")]
    Format(String),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl AppError {
    /// Process exit code: 2 for unknown names, 3 for everything that fails
    /// while building or reading inputs.
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::UnknownPair(_) | AppError::UnknownAlgebra(_) => 2,
            _ => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            AppError::UnknownPair(_) => "unknown-pair",
            AppError::UnknownAlgebra(_) => "unknown-algebra",
            AppError::Core(
                realflag_core::Error::InvalidInput(_)
                | realflag_core::Error::Precondition(_)
                | realflag_core::Error::NotSpherical(_)
                | realflag_core::Error::DimensionMismatch { .. },
            ) => "precondition",
            AppError::Core(_) => "construction",
            AppError::Format(_) | AppError::Json(_) => "format",
            AppError::Io { .. } => "io",
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        AppError::Io { path: path.into(), source }
    }
}

pub type AppResult<T> = Result<T, AppError>;
