use thiserror::Error;

/// Errors raised by the simulation library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("eigensolver did not converge for a {size}x{size} matrix after {sweeps} sweeps (off-diagonal residual {residual:e})")]
    NoConvergence {
        size: usize,
        sweeps: usize,
        residual: f64,
    },

    #[error("operator is not representable by identity, single-site and zz terms (residual {residual:e})")]
    NonRepresentable { residual: f64 },

    #[error("invalid quantum state: {0}")]
    InvalidState(String),

    #[error("system of {requested} fluxons exceeds the supported maximum of {max}")]
    SizeGuard { requested: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
