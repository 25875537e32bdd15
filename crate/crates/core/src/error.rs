use thiserror::Error;

/// Errors produced by moment computation, reconstruction and the supporting IO.
#[derive(Debug, Error)]
pub enum MomentError {
    #[error("image has zero total intensity; centroid undefined")]
    ZeroMass,
    #[error("invalid image: {0}")]
    InvalidImage(String),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("order {order} exceeds the basis size (max {max})")]
    OrderTooHigh { order: usize, max: usize },
    #[error("hypergeometric series does not terminate and |z| >= 1")]
    NonTerminating,
    #[error("numeric overflow while evaluating {0}")]
    NumericOverflow(String),
    #[error("repetition {repetition} exceeds order {order}")]
    InvalidRepetition { order: usize, repetition: i64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("cannot combine {0} with {1}: pair two continuous or two discrete rectangular families")]
    MixedFamilyClass(String, String),
    #[error("requested order {requested} exceeds available order {available}")]
    OrderExceedsAvailable { requested: usize, available: usize },
    #[error("degenerate image: {0}")]
    DegenerateImage(String),
    #[error("class {label} has {have} members, need at least {need}")]
    InsufficientClassSize { label: usize, have: usize, need: usize },
    #[error("training set is empty")]
    EmptyTraining,
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),
    #[error("decode error: {0}")]
    Decode(String),
    #[error("encode error: {0}")]
    Encode(String),
    #[error("malformed file: {0}")]
    Format(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, MomentError>;
