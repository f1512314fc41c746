use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error: {0}")]
pub struct ParseError(pub String);

impl ParseError {
    pub fn new(msg: impl Into<String>) -> Self {
        Self(msg.into())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different superalgebras: {0} vs {1}")]
    SignatureMismatch(String, String),
    #[error("invalid algebra signature: {0}")]
    InvalidSignature(String),
    #[error("generator cap exceeded: {0}")]
    CapExceeded(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not even: {0}")]
    NotEven(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("parity violation: {0}")]
    ParityViolation(String),
    #[error("element is not in the span of the basis: {0}")]
    NotInSpan(String),
    #[error("descriptor not applicable: {0}")]
    InapplicableDescriptor(String),
    #[error("membership violated after evaluation: {0}")]
    MembershipViolation(String),
    #[error("extraction mismatch: {0}")]
    ExtractionMismatch(String),
    #[error("sampling failed: {0}")]
    SamplingFailed(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
