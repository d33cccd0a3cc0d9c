use std::fmt;
use std::process::ExitCode;

use breakage::Error;

/// Failure category of a command, mapped onto the process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Failure {
    Io,
    Parse,
    Validation,
    Integration,
    Monitor,
}

impl Failure {
    pub fn code(self) -> u8 {
        match self {
            Failure::Io => 1,
            Failure::Parse => 2,
            Failure::Validation => 3,
            Failure::Integration => 4,
            Failure::Monitor => 5,
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub kind: Failure,
    pub message: String,
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn new(kind: Failure, message: impl Into<String>) -> Self {
        Self { kind, message: message.into() }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        Self::new(Failure::Parse, message)
    }

    pub fn validation(message: impl Into<String>) -> Self {
        Self::new(Failure::Validation, message)
    }

    pub fn io(context: impl fmt::Display, err: impl fmt::Display) -> Self {
        Self::new(Failure::Io, format!("{context}: {err}"))
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.kind.code())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

/// Library errors raised while building kinetics are validation failures,
/// except for malformed input files.
impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::Parse { .. } => Failure::Parse,
            Error::Io(_) => Failure::Io,
            Error::Step { .. } | Error::Convergence { .. } | Error::Singular(_) | Error::Negative { .. } => {
                Failure::Integration
            }
            _ => Failure::Validation,
        };
        Self::new(kind, e.to_string())
    }
}
