use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("{0} is not invertible modulo {1}")]
    NotInvertibleMod(String, String),

    #[error("inconsistent residues: {0}")]
    InconsistentResidues(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("elements live in different rings (p = {0} vs p = {1})")]
    MismatchedPrime(String, String),

    #[error("element is not invertible: {0}")]
    NotInvertible(String),

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("indeterminate result: {0}")]
    Indeterminate(String),

    #[error("subgroup of order {0} is too large for the generic solvers")]
    ComponentTooLarge(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// Process exit code: 1 invalid input, 2 non-invertible element,
    /// 3 no solution or inconsistency.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::NotInvertible(_) => 2,
            Error::NoSolution(_)
            | Error::InconsistentResidues(_)
            | Error::Indeterminate(_)
            | Error::InternalInconsistency(_)
            | Error::ComponentTooLarge(_) => 3,
            Error::InvalidModulus(_)
            | Error::NotInvertibleMod(..)
            | Error::InvalidInput(_)
            | Error::Parse(_)
            | Error::MismatchedPrime(..)
            | Error::Io(_) => 1,
        }
    }
}
