use thiserror::Error;

/// Failure classes of the harness, each with its own exit code.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("validation error: {0}")]
    Validation(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Validation(_) => 2,
            HarnessError::Numerical(_) => 3,
            HarnessError::Io(_) => 1,
        }
    }
}

impl From<hfb_core::Error> for HarnessError {
    fn from(e: hfb_core::Error) -> Self {
        use hfb_core::Error as E;
        match e {
            E::NonFinite(_) | E::SeriesNotConverged { .. } => HarnessError::Numerical(e.to_string()),
            _ => HarnessError::Validation(e.to_string()),
        }
    }
}

impl From<std::io::Error> for HarnessError {
    fn from(e: std::io::Error) -> Self {
        HarnessError::Io(e.to_string())
    }
}
