use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the simulation library and the sweep front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("{}", format_parse(*.line, .key, .message))]
    Parse {
        line: Option<usize>,
        key: String,
        message: String,
    },

    #[error("unknown preset `{name}` (valid presets: {valid})")]
    UnknownPreset { name: String, valid: String },

    #[error("{parameter} = {value}: {source}")]
    Sweep {
        parameter: String,
        value: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("I/O error on {}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

fn format_parse(line: Option<usize>, key: &str, message: &str) -> String {
    match line {
        Some(n) => format!("parse error at line {n}, key `{key}`: {message}"),
        None => format!("parse error in override, key `{key}`: {message}"),
    }
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::UnknownPreset { .. } => 2,
            Error::InvalidArgument(_) | Error::Numeric(_) => 3,
            Error::Sweep { source, .. } => source.exit_code(),
            Error::Io { .. } => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
