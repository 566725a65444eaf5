use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree too small")]
    DegreeTooSmall,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("incompatible towers")]
    IncompatibleTowers,
    #[error("invalid tower: {0}")]
    InvalidTower(String),
    #[error("value not representable in tower: {0}")]
    NotInTower(String),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("singular element")]
    SingularElement,
    #[error("singular curve")]
    SingularCurve,
    #[error("division by zero")]
    DivisionByZero,
    #[error("point not on curve")]
    NotOnCurve,
    #[error("point not on quartic")]
    NotOnQuartic,
    #[error("not a cocycle: {0}")]
    NotACocycle(String),
    #[error("elegant form undefined: {0}")]
    ElegantUndefined(&'static str),
    #[error("{what} exceeds cap {cap}")]
    CapExceeded { what: &'static str, cap: u64 },
    #[error("p-adic precision cap {0} exceeded")]
    PrecisionCap(u32),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// Whether the error reports a violated precondition on the caller's data
    /// (as opposed to a domain or resource-cap failure).
    pub fn is_precondition(&self) -> bool {
        matches!(self, Error::NotOnCurve | Error::NotOnQuartic)
    }
}
