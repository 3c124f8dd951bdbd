use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Hilbert space: {0}")]
    InvalidSpace(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid subsystem selection: {0}")]
    InvalidSubsystem(String),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("trace deviates from one by {0:e}")]
    InvalidTrace(f64),

    #[error("state is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("dispersive limit undefined: {0}")]
    DispersiveUndefined(String),

    #[error("Fock cutoff {required} exceeds the hard maximum {max}: {detail}")]
    CutoffExceeded {
        required: usize,
        max: usize,
        detail: String,
    },

    #[error("level truncation too small: {requested} levels kept, {required} required at T = {temperature}")]
    TooFewLevels {
        requested: usize,
        required: usize,
        temperature: f64,
    },

    #[error("non-unique steady state (singular values {smallest:e}, {second:e})")]
    NonUniqueSteadyState { smallest: f64, second: f64 },

    #[error("unstable Liouvillian: eigenvalue with real part {0:e}")]
    UnstableLiouvillian(f64),

    #[error("basis mismatch: {0}")]
    BasisMismatch(String),

    #[error("linear algebra failure: {0}")]
    Linalg(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("at grid point {point}: {source}")]
    AtPoint {
        point: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn at_point(self, point: impl Into<String>) -> Error {
        Error::AtPoint {
            point: point.into(),
            source: Box::new(self),
        }
    }
}
