use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field descriptor mismatch: {0} vs {1}")]
    DescriptorMismatch(String, String),
    #[error("field is infinite and cannot be enumerated")]
    InfiniteField,
    #[error("invalid field descriptor: {0}")]
    InvalidField(String),
    #[error("cannot parse field element {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("operation not supported over this field: {0}")]
    UnsupportedField(String),

    #[error("zero denominator")]
    ZeroDenominator,
    #[error("constant function has no map degree")]
    ConstantFunction,
    #[error("inexact polynomial division")]
    InexactDivision,

    #[error("matrix is singular")]
    SingularMatrix,
    #[error("projective point with both coordinates zero")]
    ZeroPoint,
    #[error("group generation exceeded cap of {0} elements")]
    CapExceeded(usize),

    #[error("unsupported genus {0}; only genus 0 and 1 are handled")]
    UnsupportedGenus(u32),

    #[error("orbit of {point} has {orbit} points but the group has order {order}")]
    NonFreeOrbit {
        point: String,
        orbit: usize,
        order: usize,
    },
    #[error("pole divisor verification failed: {0}")]
    PoleMismatch(String),
    #[error("no invariant generator found among symmetric candidates")]
    NoGeneratorFound,
    #[error("parametrization has a base point at {0}")]
    BasePointFound(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("characteristic {0} is not allowed here")]
    BadCharacteristic(u64),
    #[error("ramification data (order {order}, {fixed} fixed points) is inconsistent")]
    InconsistentRamification { order: u64, fixed: u64 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("degenerate base point: sigma^2(Q) = tau^2(Q) for Q = {0}")]
    DegenerateQ(String),
    #[error("quartic fit failed: kernel dimension {0}")]
    FitFailed(usize),
    #[error("pole verification failed: {0}")]
    PoleVerificationFailed(String),
    #[error("point {0} is not on the curve")]
    NotOnCurve(String),

    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Config(e.to_string())
    }
}
