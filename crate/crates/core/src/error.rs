use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("node count must be odd and at least 3, got {0}")]
    InvalidNodeCount(usize),

    #[error("need at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },

    #[error("N + 2k must be odd: N = {original}, k = {pairs} gives {total} nodes")]
    EvenNodeTotal {
        original: usize,
        pairs: usize,
        total: usize,
    },

    #[error("expected {expected} sample values, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("non-finite value {value} at node {node}")]
    NonFiniteSample { node: usize, value: f64 },

    #[error("phantom slot at node {node} is unfilled")]
    UnfilledSlot { node: usize },

    #[error("expected {expected} explicit phantom values, got {got}")]
    PhantomCountMismatch { expected: usize, got: usize },

    #[error("spline order must be at least 1, got {0}")]
    InvalidOrder(usize),

    #[error("tail tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error(
        "tail tolerance {tolerance} needs truncation depth {required} for order {order}, \
         above the limit {limit}; use a looser tolerance"
    )]
    TruncationTooDeep {
        order: usize,
        tolerance: f64,
        required: f64,
        limit: usize,
    },

    #[error("harmonic index {index} out of range 1..={max}")]
    HarmonicOutOfRange { index: usize, max: usize },

    #[error("derivative order {order} not available for a spline of order {spline_order}")]
    DerivativeOrder { order: usize, spline_order: usize },

    #[error("match order {0} is not supported (0, 1 or 2)")]
    MatchOrder(usize),

    #[error("degenerate arc [{left}, {right}]")]
    DegenerateArc { left: f64, right: f64 },

    #[error("derivative targets differ in length: {left} vs {right}")]
    DerivativeLengths { left: usize, right: usize },

    #[error("source function `{0}` has no exact derivative evaluators")]
    MissingDerivatives(String),

    #[error("a reference function is required for {0}")]
    MissingSource(&'static str),

    #[error("dense grid needs at least {min} points, got {got}")]
    DenseTooSmall { min: usize, got: usize },

    #[error("invalid search setting: {0}")]
    InvalidSearch(String),

    #[error("objective is not finite at the initial point ({0})")]
    NonFiniteObjective(f64),

    #[error("unknown function `{0}` (expected ramp, ramp_integer, sine75 or exp02)")]
    UnknownFunction(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}:{line}: cannot parse `{text}` as a number")]
    Parse {
        path: PathBuf,
        line: usize,
        text: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
