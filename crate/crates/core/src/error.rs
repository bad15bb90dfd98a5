use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid element for {semiring}: {detail}")]
    InvalidElement { semiring: String, detail: String },

    #[error("invalid semiring descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("semiring is not algebraically closed")]
    NotAlgebraicallyClosed,

    #[error("empty family has no sum: semiring has no zero")]
    EmptyNoZero,

    #[error("semiring has no unity")]
    NoUnity,

    #[error("element is not invertible: {0}")]
    NotInvertible(String),

    #[error("interval bounds out of order: {lo} is not below {hi}")]
    OrderViolation { lo: String, hi: String },

    #[error("value leaves the strong interval extension: {0}")]
    StrongModeViolation(String),

    #[error("empty set")]
    EmptySet,

    #[error("fraction with zero denominator")]
    ZeroDenominator,

    #[error("zero fraction has no inverse")]
    InverseOfZero,

    #[error("missing capability: {0}")]
    MissingCapability(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrices are over different semirings")]
    SemiringMismatch,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not semi-definite")]
    NotSemidefinite,

    #[error("partial sums did not stabilize within {0} terms")]
    Diverged(usize),

    #[error("node id {id} out of range for {node_count} nodes")]
    BadNodeId { id: usize, node_count: usize },

    #[error("duplicate arc {from} -> {to}")]
    DuplicateArc { from: usize, to: usize },

    #[error("matrix is reducible")]
    Reducible,

    #[error("candidate is not an eigenvalue: {0}")]
    NotEigenvalue(String),

    #[error("exact rational mode required: {0}")]
    ExactModeRequired(String),

    #[error("input too large for this method (limit {limit}, got {got})")]
    TooLarge { limit: usize, got: usize },

    #[error("stabilization precheck failed: {0}")]
    PrecheckFailed(String),

    #[error("iteration did not stabilize after {0} steps")]
    NotStabilized(usize),

    #[error("candidate does not solve X = AX + B")]
    NotASolution,

    #[error("dequantization parameter must be positive, got {0}")]
    NonpositiveH(f64),

    #[error("negative input {0}")]
    NegativeInput(f64),

    #[error("empty grid")]
    EmptyGrid,

    #[error("grid functions are sampled on different points")]
    GridMismatch,

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
