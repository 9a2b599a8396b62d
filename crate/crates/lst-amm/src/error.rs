use thiserror::Error;

/// Errors produced by pool math, price processes and estimators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AmmError {
    /// An input violated a precondition (non-positive reserve, bad index, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A swap would drain more of the output token than the pool holds.
    #[error("insufficient liquidity: requested output {requested} exceeds available {available}")]
    InsufficientLiquidity { requested: f64, available: f64 },

    /// The invariant solver failed to reach the required residual.
    #[error("solver did not converge after {iterations} iterations (relative residual {residual:e})")]
    NonConvergence { iterations: u32, residual: f64 },

    /// Swaps and spot prices are implemented for two-token pools only.
    #[error("unsupported pool size: {0} tokens (2 required)")]
    UnsupportedPoolSize(usize),
}

impl AmmError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        AmmError::Domain(msg.into())
    }
}
