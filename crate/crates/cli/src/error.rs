use std::fmt;

use imoments::MomentError;

/// A failure carrying its exit status: 1 for usage, 2 for runtime.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn runtime(msg: impl Into<String>) -> Self {
        CliError::Runtime(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Runtime(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Runtime(m) => f.write_str(m),
        }
    }
}

impl From<MomentError> for CliError {
    fn from(e: MomentError) -> Self {
        use MomentError::*;
        match e {
            InvalidParam(_)
            | MixedFamilyClass(..)
            | OrderTooHigh { .. }
            | OrderExceedsAvailable { .. }
            | InvalidRepetition { .. }
            | UnsupportedFormat(_)
            | InsufficientClassSize { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}
