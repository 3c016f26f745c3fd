use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("index out of range: {0}")]
    Index(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// The hypergeometric series did not reach the requested tolerance.
    #[error("series did not converge within {layers} layers (tail bound {tail_bound:e}, partial sum {partial_sum:e})")]
    NonConvergence {
        layers: usize,
        tail_bound: f64,
        partial_sum: f64,
    },

    #[error("quadrature failed: estimated error {abs_error:e} exceeds tolerance {tolerance:e} after {subdivisions} subdivisions (value {value:e})")]
    Quadrature {
        value: f64,
        abs_error: f64,
        tolerance: f64,
        subdivisions: usize,
    },

    /// A subspace frame is too far from orthonormal to be repaired.
    #[error("basis is not orthonormal: max |ΩᵀΩ - I| = {0:e}")]
    NotOrthonormal(f64),

    #[error("matrix is not an orthogonal projector: {0}")]
    NotProjector(String),

    /// Some semi-axis is zero where the formula divides by it.
    #[error("semi-axis {index} is zero; this form divides by the semi-axes")]
    DegenerateAxis { index: usize },

    #[error("parameters are not admissible: {0}")]
    Inadmissible(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for failures of an iterative numerical method (as opposed to bad input).
    pub fn is_numerical_failure(&self) -> bool {
        matches!(self, Error::NonConvergence { .. } | Error::Quadrature { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
