//! Crate-wide error type.
//!
//! Errors split into two broad classes that the CLI maps onto exit codes:
//! validation errors (bad parameters, incompatible grids, wrong sizes) and
//! runtime errors (data-dependent numeric failures, I/O, registry faults).

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside its admissible range. Always names the field.
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: String, reason: String },

    /// Input too small for the requested method (e.g. FFT synthesis).
    #[error("size error: {0}")]
    Size(String),

    /// A lag or moment grid is incompatible with the sample.
    #[error("grid error: {0}")]
    Grid(String),

    /// A block of increments is numerically zero while a negative moment
    /// order was requested, which would make the partition function infinite.
    #[error("degenerate increment in block {block} at delta_t {delta_t}: |dX| below 1e-300 with a negative q in the moment grid")]
    DegenerateIncrement { block: usize, delta_t: f64 },

    /// Regression preconditions violated (too few scales, degenerate grid).
    #[error("regression error: {0}")]
    Regression(String),

    /// Modified-partition block structure does not fit the sample.
    #[error("block error: {0}")]
    Block(String),

    /// Numerical routine failed to reach its tolerance.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// Run registry is unreadable or a record is malformed.
    #[error("registry error: {0}")]
    Registry(String),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("argument error: {0}")]
    Argument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(field: &str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field: field.to_string(),
            reason: reason.into(),
        }
    }

    /// True for errors the CLI reports as exit code 1 (caller mistakes that
    /// are detectable before any output is produced). Everything else is a
    /// runtime failure and maps to exit code 2.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter { .. }
                | Error::Size(_)
                | Error::Grid(_)
                | Error::Regression(_)
                | Error::Block(_)
                | Error::Argument(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
