use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("characteristic {0} is not a prime below 2^31")]
    InvalidField(u32),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("induced map is not well defined: {0}")]
    NotWellDefined(String),

    #[error("degree {degree:?} lies outside the window {window:?}")]
    OutsideWindow { degree: Vec<i64>, window: Vec<usize> },

    #[error("window {0:?} is too small for this operation")]
    DegenerateWindow(Vec<usize>),

    #[error("window exhausted: {reason} (largest shift tried: {largest_shift:?})")]
    WindowExhausted {
        reason: String,
        largest_shift: Option<Vec<usize>>,
    },

    #[error("invalid module map: {0}")]
    InvalidMap(String),

    #[error("module fails validation: {0}")]
    InvalidModule(String),

    #[error("predicate is not upward closed: {lower:?} holds but {upper:?} does not")]
    NotUpwardClosed { lower: Vec<i64>, upper: Vec<i64> },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("regularity precondition failed: {0}")]
    NotRegular(String),

    #[error("malformed module description: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
