use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0:?} is reducible")]
    ReducibleModulus(Vec<u64>),
    #[error("field size {0} exceeds the supported cap of 2^20")]
    FieldTooLarge(u128),
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("enumeration guard exceeded: {task} needs {needed}, guard is {guard}")]
    GuardExceeded {
        task: String,
        needed: String,
        guard: u64,
    },
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 2 validation, 3 guard, 4 internal assertion.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::GuardExceeded { .. } => 3,
            Error::VerificationFailed(_) => 4,
            _ => 2,
        }
    }
}
