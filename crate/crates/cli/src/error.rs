use thiserror::Error;

/// Failures of the command-line layer. Core errors keep their own codes.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },
    #[error("invalid value for {name}: {message}")]
    Usage { name: &'static str, message: String },
    #[error(transparent)]
    Core(#[from] vortexprox::Error),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "PARSE_ERROR",
            CliError::Io { .. } => "IO_ERROR",
            CliError::Usage { .. } => "USAGE",
            CliError::Core(e) => e.code(),
        }
    }
}
