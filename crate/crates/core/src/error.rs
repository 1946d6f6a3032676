use thiserror::Error;

/// Errors raised while constructing states, packets or evaluating observables.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported hypergeometric order n' = {0} (only 0 and 1 occur for circular states)")]
    UnsupportedOrder(i64),

    #[error("no such state: {0}")]
    NoSuchState(String),

    #[error("supercritical coupling: Z alpha = {xi} >= |kappa| = {kappa_abs} for Z = {z}, kappa = {kappa}")]
    Supercritical {
        z: u32,
        kappa: i64,
        xi: f64,
        kappa_abs: f64,
    },

    #[error("quadrature did not converge: residual estimate {residual:e} exceeds tolerance {tolerance:e}")]
    Accuracy { residual: f64, tolerance: f64 },

    #[error("mismatched nuclear charge: {0} vs {1}")]
    MismatchedCharge(u32, u32),

    #[error("invalid packet: {0}")]
    InvalidPacket(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
