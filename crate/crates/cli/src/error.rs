use std::process::ExitCode;

use piradical::error::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),

    #[error("budget exhausted: {0}")]
    Budget(String),

    #[error("output error: {0}")]
    Output(String),
}

impl CliError {
    pub fn output(e: impl std::fmt::Display) -> Self {
        Self::Output(e.to_string())
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            Self::Input(_) | Self::Output(_) => ExitCode::from(2),
            Self::Budget(_) => ExitCode::from(3),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExhausted(_) | Error::TooLarge { .. } | Error::ClassTooLarge { .. } => {
                Self::Budget(e.to_string())
            }
            other => Self::Input(other.to_string()),
        }
    }
}

/// How a completed run ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    /// Some cell was not settled within budget.
    Budget,
    /// A checked statement failed.
    Violation,
}

impl Status {
    pub fn exit_code(self) -> ExitCode {
        match self {
            Self::Ok => ExitCode::SUCCESS,
            Self::Violation => ExitCode::from(1),
            Self::Budget => ExitCode::from(3),
        }
    }
}
