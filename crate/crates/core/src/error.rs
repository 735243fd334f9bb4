use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("covariance is not physical: {0}")]
    NonPhysicalInput(String),
    #[error("invalid covariance matrix: {0}")]
    InvalidCovariance(String),
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("argument outside the function domain: {0}")]
    OutOfDomain(String),
    #[error("negative discriminant in symplectic eigenvalues: {0}")]
    NegativeDiscriminant(String),
    #[error("intensity correlation diverges: {0}")]
    DivergentCorrelation(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    /// Stable variant name, used for diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonPhysicalInput(_) => "NonPhysicalInput",
            Error::InvalidCovariance(_) => "InvalidCovariance",
            Error::InvalidDimension(_) => "InvalidDimension",
            Error::IndexOutOfRange(_) => "IndexOutOfRange",
            Error::OutOfRange(_) => "OutOfRange",
            Error::OutOfDomain(_) => "OutOfDomain",
            Error::NegativeDiscriminant(_) => "NegativeDiscriminant",
            Error::DivergentCorrelation(_) => "DivergentCorrelation",
            Error::InvalidConfig(_) => "InvalidConfig",
        }
    }
}
