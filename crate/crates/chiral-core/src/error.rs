//! Error type shared by all modules.

/// Failures surfaced by construction, bracket evaluation, and integration.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Parameter validation failed at construction.
    #[error("invalid parameters: {0}")]
    InvalidParams(&'static str),

    /// A state or gradient had the wrong length for the structure it met.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// The constraint Gram matrix is not invertible at the evaluation
    /// point, so the constraints are not second class there.
    #[error("singular constraint Gram matrix (|det| = {det:e})")]
    SingularGramMatrix { det: f64 },

    /// The Darboux chart requires a positive chirality coefficient.
    #[error("lambda = {lambda} not positive; the Darboux chart needs sqrt(lambda)")]
    NegativeLambda { lambda: f64 },

    /// Regular reduction needs nonvanishing linear momentum.
    #[error("zero linear momentum (l^2 = {lsq:e}); reduction is singular")]
    ZeroMomentum { lsq: f64 },

    /// Fixed-point iteration of the implicit solver did not converge.
    #[error("implicit solver stalled at step {step} (residual {residual:e})")]
    NonConvergence { step: usize, residual: f64 },

    /// The momentum handed to reconstruction disagrees with the
    /// trajectory's conserved l^2.
    #[error("momentum mismatch: |p0|^2 = {got:e} but trajectory carries l^2 = {expected:e}")]
    MomentumMismatch { expected: f64, got: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;
