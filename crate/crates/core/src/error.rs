use thiserror::Error;

/// Errors raised when an operation's preconditions are not met.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    #[error("{0}")]
    Domain(String),
    /// A mode amplitude was paired with a grid of a different shape.
    #[error("amplitude has {values} values but grid has {modes} modes")]
    GridMismatch { values: usize, modes: usize },
    /// Time samples are too coarse to resolve the band.
    #[error("time sampling rate {rate:.6} is below the required {required:.6} (must exceed omega2/pi)")]
    Undersampled { rate: f64, required: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
