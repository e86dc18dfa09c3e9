use thiserror::Error;

/// Errors produced by state construction, decompositions, and phase
/// computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max deviation {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("Bloch vector norm {norm} exceeds 1")]
    BlochNormExceeded { norm: f64 },

    #[error("trace {trace} deviates from 1 beyond tolerance")]
    TraceNotUnit { trace: f64 },

    #[error("state overlap vanishes at step {step}: supports are orthogonal")]
    DegenerateStep { step: usize },

    #[error("interferometric phase is indeterminate for degenerate state")]
    DegenerateSpectrum,

    #[error("phase is indeterminate: visibility vanishes")]
    IndeterminatePhase,

    #[error("fringe fit is ill-conditioned: need >= 3 distinct settings spanning more than pi")]
    IllConditionedFit,
}

pub type Result<T> = std::result::Result<T, Error>;
