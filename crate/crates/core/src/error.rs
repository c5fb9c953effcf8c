use thiserror::Error;

/// Errors raised by the library; each maps to a CLI exit code.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("build error: {0}")]
    Build(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::Parse { .. } | Error::Build(_) => 1,
            Error::Unsupported(_) => 2,
            Error::TheoremViolation(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
