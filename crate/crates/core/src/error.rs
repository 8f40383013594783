use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum KefError {
    /// A constructor or operation received a parameter outside its domain.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// An operation's stated precondition does not hold for the given inputs.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Numerical integration could not reach the requested tolerance.
    #[error("quadrature failed: {context} (best error estimate {best_error:.3e}, tolerance {tol:.3e})")]
    Quadrature {
        context: String,
        best_error: f64,
        tol: f64,
    },

    /// The requested combination of inputs has no implemented evaluation path.
    #[error("unsupported combination: {0}")]
    Unsupported(String),

    /// Adaptive horizon extension hit its cap before the tail bound fell
    /// under the requested tolerance.
    #[error("horizon exceeded: reached T={horizon:.3e} with tail bound {tail_bound:.3e} > tol {tail_tol:.3e}")]
    HorizonExceeded {
        horizon: f64,
        tail_bound: f64,
        tail_tol: f64,
    },

    /// Support-set enumeration exceeded its point budget.
    #[error("enumeration overflow: more than {cap} points below value cap {value_cap:.3e}")]
    EnumerationOverflow { cap: usize, value_cap: f64 },

    /// A scenario file failed validation; the message names the offending field.
    #[error("schema error: {0}")]
    Schema(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, KefError>;
