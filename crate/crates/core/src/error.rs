//! Error type shared by every module in the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("empty region")]
    EmptyRegion,
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("class has no pixels: {0}")]
    ClassHasNoPixels(String),
    #[error("degenerate component")]
    DegenerateComponent,
    #[error("degenerate labels: training data contains a single class")]
    DegenerateLabels,
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Image(#[from] image::ImageError),
}

/// Coarse category used by callers that map errors to process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Caller misuse: bad configuration or arguments.
    Usage,
    /// Problems with input data: files, formats, shapes, labels.
    Data,
    /// Numerical breakdown inside a solver or density model.
    Numerical,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidInput(_) => ErrorKind::Usage,
            Error::DimensionMismatch(_)
            | Error::EmptyRegion
            | Error::InsufficientData(_)
            | Error::ClassHasNoPixels(_)
            | Error::DegenerateLabels
            | Error::Parse(_)
            | Error::Io(_)
            | Error::Image(_) => ErrorKind::Data,
            Error::DegenerateComponent | Error::NumericalFailure(_) => ErrorKind::Numerical,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
