use std::fmt;
use std::process::ExitCode;

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or flag values: exit 1.
    Usage(String),
    /// Unreadable or invalid input: exit 2.
    Input(String),
    /// Missing, corrupt or incompatible model: exit 3.
    Model(String),
    /// `explain --verify` found an attribution that does not add up: exit 4.
    Verify(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Model(_) => 3,
            CliError::Verify(_) => 4,
        })
    }

    pub fn input(e: impl fmt::Display) -> Self {
        CliError::Input(e.to_string())
    }

    pub fn model(e: impl fmt::Display) -> Self {
        CliError::Model(e.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Input(m) => write!(f, "invalid input: {m}"),
            CliError::Model(m) => write!(f, "model error: {m}"),
            CliError::Verify(m) => write!(f, "verification failed: {m}"),
        }
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;
