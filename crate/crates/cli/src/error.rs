use std::fmt;
use std::io;

use unruh_pair_core::ErrorKind;

#[derive(Debug)]
pub enum AppError {
    Usage { code: &'static str, message: String },
    Io { path: String, source: io::Error },
    Core(unruh_pair_core::Error),
}

impl AppError {
    pub fn usage(code: &'static str, message: impl Into<String>) -> Self {
        AppError::Usage {
            code,
            message: message.into(),
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            AppError::Usage { code, .. } => code,
            AppError::Io { .. } => "io",
            AppError::Core(e) => e.code(),
        }
    }

    /// 1 I/O, 2 usage, 3 numeric, 4 invalid state.
    pub fn exit_code(&self) -> u8 {
        match self {
            AppError::Io { .. } => 1,
            AppError::Usage { .. } => 2,
            AppError::Core(e) => match e.kind() {
                ErrorKind::Usage => 2,
                ErrorKind::Numeric => 3,
                ErrorKind::InvalidState => 4,
            },
        }
    }
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Usage { message, .. } => f.write_str(message),
            AppError::Io { path, source } => write!(f, "{path}: {source}"),
            AppError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for AppError {}

impl From<unruh_pair_core::Error> for AppError {
    fn from(e: unruh_pair_core::Error) -> Self {
        AppError::Core(e)
    }
}
