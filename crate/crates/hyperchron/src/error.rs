//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input failed the weak Hermiticity test. `defect` is the largest
    /// entrywise modulus of M minus its conjugate transpose.
    #[error("matrix is not weakly Hermitian (max asymmetry {defect:.3e})")]
    NonHermitianInput { defect: f64 },

    #[error("expected {expected} slot(s), got {actual}")]
    WrongArity { expected: usize, actual: usize },

    #[error("operand dimensions do not match ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },

    #[error("expected dimension {expected}, got {actual}")]
    WrongDimension { expected: usize, actual: usize },

    #[error("interval is not timelike (rank {rank}, signature ({plus},{minus}))")]
    NotTimelike { rank: usize, plus: usize, minus: usize },

    #[error("curve tangent is not future-timelike at parameter {param}")]
    NotTimelikeTangent { param: f64 },

    #[error("no well-conditioned unimodular sample after {attempts} attempts")]
    SingularSample { attempts: usize },

    #[error("matrix is not unimodular (|det - 1| = {defect:.3e})")]
    NotUnimodular { defect: f64 },

    #[error("momentum is tachyonic (chronometric form {delta:.6e} < 0)")]
    TachyonicMomentum { delta: f64 },

    #[error("system is massless; spin is undefined")]
    MasslessSystem,

    #[error("correlation matrix is singular within tolerance")]
    SingularCorrelation,

    #[error("input is identically zero")]
    ZeroInput,

    #[error("matrix trace must vanish (|trace| = {defect:.3e})")]
    NotTraceless { defect: f64 },

    #[error("invalid density matrix: {reason}")]
    InvalidDensityMatrix { reason: String },
}
