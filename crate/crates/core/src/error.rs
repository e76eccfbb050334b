use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension {n} exceeds the configured cap of {cap}")]
    DimensionTooLarge { n: usize, cap: usize },

    #[error("dimension must be at least 1")]
    EmptyDimension,

    #[error("table length {got} does not match 2^{n} = {expected}")]
    LengthMismatch { n: usize, expected: usize, got: usize },

    #[error("non-finite value {value} at index {index}")]
    NonFinite { index: usize, value: f64 },

    #[error("coordinate {coord} is out of range for dimension {n}")]
    CoordinateOutOfRange { coord: usize, n: usize },

    #[error("level {level} is out of range for dimension {n}")]
    LevelOutOfRange { level: usize, n: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("table is not 0/1-valued: {value} at index {index}")]
    NotBoolean { index: usize, value: f64 },

    #[error("function is outside the XOS domain: {0}")]
    NotInXosDomain(String),

    #[error("linear program failed: {0}")]
    LinearProgram(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{features} features exceed the cap of {cap}")]
    FeatureCapExceeded { features: usize, cap: usize },

    #[error("under-determined regression: {features} features but only {samples} samples")]
    Underdetermined { features: usize, samples: usize },

    #[error("rank {index} is out of range (must be < {count})")]
    RankOutOfRange { index: u64, count: u64 },
}

impl Error {
    /// True for errors caused by a size limit rather than bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::DimensionTooLarge { .. } | Error::FeatureCapExceeded { .. }
        )
    }
}
