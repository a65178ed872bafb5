use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation undefined for the zero polynomial: {0}")]
    ZeroPolynomial(&'static str),
    #[error("unsupported parameter: {0}")]
    Unsupported(String),
    #[error("element is not coprime to the modulus")]
    NotCoprime,
    #[error("element is not an l-th root of unity (l = {0})")]
    NotRootOfUnity(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("groups do not share an ambient")]
    AmbientMismatch,
    #[error("relation lattice does not have full rank, quotient is infinite")]
    InfiniteQuotient,
    #[error("{0} does not divide the modulus")]
    NotAFactor(String),
    #[error("radicand is not cyclotomic: {0}")]
    NotCyclotomic(String),
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Unsupported-shape errors are the ones a caller may want to report as
    /// "outside the supported territory" rather than bad input.
    pub fn is_unsupported(&self) -> bool {
        matches!(self, Error::Unsupported(_) | Error::UnsupportedShape(_))
    }
}
