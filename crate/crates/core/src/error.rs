use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A coefficient or evaluated value left the finite range of `f64`.
    #[error("arithmetic overflow in {op}: non-finite value produced")]
    Overflow { op: &'static str },

    /// A series was constructed from an empty or non-finite coefficient list.
    #[error("invalid power series: {0}")]
    InvalidSeries(String),

    #[error("requested degree {requested} exceeds the cap of {cap}")]
    Capacity { requested: usize, cap: usize },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid value for `{field}`: {message}")]
    Validation { field: String, message: String },

    /// The reference integrator produced a non-finite state.
    #[error("integration diverged at t = {t}")]
    Divergence { t: f64 },
}
