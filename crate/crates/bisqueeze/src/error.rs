use thiserror::Error;

/// Error type shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("mode count mismatch: {left} vs {right}")]
    ModeMismatch { left: usize, right: usize },

    #[error("mode index {index} out of range for {n_modes} modes")]
    ModeOutOfRange { index: usize, n_modes: usize },

    #[error("invalid mode subset: {0}")]
    InvalidModes(String),

    #[error("not a valid covariance matrix: {0}")]
    InvalidCovariance(String),

    #[error("not a symplectic matrix: {0}")]
    NotSymplectic(String),

    #[error("covariance matrix is not physical (min eigenvalue of sigma + i*Omega is {min_eigenvalue:.3e})")]
    NotPhysical { min_eigenvalue: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("truncated space too small: {0}")]
    Truncation(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 2 for input/validation problems,
    /// 3 for numerical failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::ModeMismatch { .. }
            | Error::ModeOutOfRange { .. }
            | Error::InvalidModes(_)
            | Error::InvalidCovariance(_)
            | Error::InvalidParameter(_)
            | Error::Parse { .. }
            | Error::Io(_) => 2,
            Error::NotSymplectic(_)
            | Error::NotPhysical { .. }
            | Error::Truncation(_)
            | Error::Numerical(_) => 3,
        }
    }
}
