use thiserror::Error;

/// Errors produced by the correlation geometry pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("series have no common index range")]
    EmptyOverlap,
    #[error("duplicate series id `{0}`")]
    DuplicateId(String),
    #[error("series `{0}` is empty")]
    EmptySeries(String),
    #[error("series `{id}` has a non-finite value at position {index}")]
    NonFinite { id: String, index: usize },
    #[error("series `{id}` has step {step}, expected {expected}")]
    StepMismatch { id: String, step: i64, expected: i64 },
    #[error("step must be positive, got {0}")]
    InvalidStep(i64),
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("window length {window} exceeds series length {len}")]
    WindowTooLong { window: usize, len: usize },
    #[error("series `{id}` has zero variance in the window starting at {start}")]
    ZeroVariance { id: String, start: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("value {0} outside the correlation domain [-1, 1]")]
    DomainError(f64),
    #[error("metric violation at triple ({i}, {j}, {k}) with margin {margin:e}")]
    MetricViolation { i: usize, j: usize, k: usize, margin: f64 },
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("invalid spherical triangle: {violated} violated by {margin:e}")]
    InvalidTriangle { violated: &'static str, margin: f64 },
    #[error("distances are not embeddable in Euclidean space (scaled determinant {0:e})")]
    NonEmbeddable(f64),
    #[error("points do not lie in a common open hemisphere")]
    HemisphereViolation,
    #[error("points span {rank} dimensions; a 2-sphere hull needs at most 3")]
    NotOnTwoSphere { rank: usize },
    #[error("hull construction left input point {0} outside the hull")]
    HullContainment(usize),
    #[error("unsupported dimension {0} for this measure")]
    UnsupportedDimension(usize),
    #[error("csv input: {0}")]
    Csv(String),
    #[error("missing value in column `{column}` at data row {row}")]
    MissingValue { column: String, row: usize },
    #[error("irregular sampling: tick {tick} at data row {row} breaks step {step}")]
    IrregularSampling { row: usize, tick: i64, step: i64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
