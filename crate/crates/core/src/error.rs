use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parameter out of domain: {0}")]
    ParameterDomain(String),

    #[error("thinning parameter alpha = {alpha} exceeds the admissible bound {bound:.6}")]
    Inadmissible { alpha: f64, bound: f64 },

    #[error("degenerate series: {0}")]
    DegenerateSeries(String),

    #[error("unsupported lag configuration: {0}")]
    UnsupportedLags(String),

    #[error("input format error at line {line}: {message}")]
    InputFormat { line: usize, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("incomplete report: {0}")]
    PartialReport(String),
}

pub type Result<T> = std::result::Result<T, Error>;
