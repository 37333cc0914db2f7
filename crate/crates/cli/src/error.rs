use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("invalid configuration: {0}")]
    Validation(String),

    #[error("{0}")]
    Infeasible(qgame::Error),

    #[error("{0}")]
    Engine(qgame::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{0} check(s) failed")]
    ChecksFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Io { .. } | Self::Engine(_) => 1,
            Self::Parse { .. } => 3,
            Self::Validation(_) => 4,
            Self::Infeasible(_) => 5,
            Self::ChecksFailed(_) => 6,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io { path: path.into(), source }
    }
}

impl From<qgame::Error> for CliError {
    fn from(e: qgame::Error) -> Self {
        match e {
            qgame::Error::InfeasibleParameter { .. } | qgame::Error::OutOfDomain { .. } => Self::Infeasible(e),
            qgame::Error::InvalidState(_)
            | qgame::Error::InvalidPayoff(_)
            | qgame::Error::InvalidDimension { .. }
            | qgame::Error::Shape(_) => Self::Validation(e.to_string()),
            _ => Self::Engine(e),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
