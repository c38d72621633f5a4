use thiserror::Error;

/// Errors shared by every module of the crate.
///
/// The variants are grouped so that a front end can map them onto a small
/// set of exit codes: parameter-like problems on one side, numeric or
/// resource exhaustion on the other.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Invalid input parameters, e.g. a Euclidean or spherical `(p, q)`.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// The operation is only defined for the other parity of `q`.
    #[error("unsupported for these parameters: {0}")]
    Unsupported(String),

    /// A documented precondition of the call was not met.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A query reached beyond the part of the tiling that is trustworthy.
    #[error("out of depth: needed {needed}, generated region supports {available}")]
    OutOfDepth { needed: u32, available: u32 },

    /// An iterative numeric routine did not converge within its budget.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// A configurable resource cap was exceeded.
    #[error("resource cap exceeded: {0}")]
    Resource(String),

    /// Floating-point tolerances could not separate two distinct objects.
    #[error("precision error: {0}")]
    Precision(String),

    /// An internal consistency check failed.
    #[error("inconsistent structure: {0}")]
    Inconsistent(String),
}

impl Error {
    /// True for errors caused by the caller's parameters rather than by
    /// numeric or resource limits.
    pub fn is_parameter_error(&self) -> bool {
        matches!(
            self,
            Error::Parameter(_) | Error::Unsupported(_) | Error::Precondition(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
