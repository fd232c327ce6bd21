use thiserror::Error;

/// Errors raised by the toolkit.
///
/// Variants split into two families: malformed input (wrong shape, unknown
/// names, out-of-range parameters) and domain/contract violations (a
/// mathematically meaningful request whose preconditions fail).
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: defect {defect:e} exceeds {allowed:e}")]
    NotHermitian { defect: f64, allowed: f64 },

    #[error("eigensolver residual {residual:e} exceeds tolerance {tol:e}")]
    Convergence { residual: f64, tol: f64 },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("operator is not Fredholm: min singular value {min_singular:e} <= {tol:e}")]
    NotFredholm { min_singular: f64, tol: f64 },

    #[error("degenerate spectral-flow crossing: eigenvalue pinned at 0 near parameter {parameter}")]
    DegenerateCrossing { parameter: f64 },

    #[error("divisibility violation: {0}")]
    Divisibility(String),
}

impl Error {
    /// True for errors caused by malformed input rather than a failed
    /// mathematical precondition.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_) | Error::Dimension(_) | Error::NotSquare { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
