use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in {func}: {msg}")]
    Domain { func: &'static str, msg: String },

    #[error("invalid parameter: {0}")]
    Param(String),

    #[error("{func} did not converge: {msg}")]
    Convergence { func: &'static str, msg: String },

    #[error("non-finite integrand value at t = {at}")]
    Evaluation { at: f64 },

    #[error("overflow in {0}")]
    Overflow(&'static str),

    #[error("operation not supported for {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(func: &'static str, msg: impl Into<String>) -> Error {
    Error::Domain { func, msg: msg.into() }
}

pub(crate) fn no_conv(func: &'static str, msg: impl Into<String>) -> Error {
    Error::Convergence { func, msg: msg.into() }
}
