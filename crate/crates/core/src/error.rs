use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is singular")]
    Singular,
    #[error("not unimodular: ad - bc = {0}, expected 1")]
    NotUnimodular(String),
    #[error("not in the complexified rotation group: a^2 + b^2 = {0}, expected 1")]
    NotUnitNorm(String),
    #[error("matrix does not lie in the embedded Jacobi algebra")]
    NotInAlgebra,
    #[error("element is not nilpotent")]
    NotNilpotent,
    #[error("element is zero")]
    ZeroElement,
    #[error("not an sl2-triple")]
    NotATriple,
    #[error("not a real KS-triple")]
    NotKsReal,
    #[error("label {0} is not a nilpotent orbit label")]
    NotNilpotentLabel(String),
    #[error("unknown set id: {0}")]
    UnknownSetId(String),
    #[error("witness check failed with residual {0:e}")]
    InternalInconsistency(f64),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code used by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::Singular => "Singular",
            Error::NotUnimodular(_) => "NotUnimodular",
            Error::NotUnitNorm(_) => "NotUnitNorm",
            Error::NotInAlgebra => "NotInAlgebra",
            Error::NotNilpotent => "NotNilpotent",
            Error::ZeroElement => "ZeroElement",
            Error::NotATriple => "NotATriple",
            Error::NotKsReal => "NotKsReal",
            Error::NotNilpotentLabel(_) => "NotNilpotentLabel",
            Error::UnknownSetId(_) => "UnknownSetId",
            Error::InternalInconsistency(_) => "InternalInconsistency",
            Error::Parse(_) => "ParseError",
        }
    }

    /// Input-validation failures, as opposed to mathematically invalid requests.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::NotUnimodular(_) | Error::NotUnitNorm(_) | Error::Parse(_) | Error::UnknownSetId(_)
        )
    }
}
