use thiserror::Error;

/// Failures raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PhaseError {
    #[error("amplitude vector has zero norm (|v| = {norm:e})")]
    ZeroNorm { norm: f64 },

    #[error("domain error: {0}")]
    Domain(&'static str),

    #[error("matrix is not in SU(2): |det - 1| = {deviation:e}")]
    NotSpecialUnitary { deviation: f64 },

    #[error("density matrix spectrum is degenerate (eigenvalue gap {gap:e})")]
    DegenerateSpectrum { gap: f64 },

    #[error("consecutive path states {index} and {next} are orthogonal")]
    OrthogonalStep { index: usize, next: usize },

    #[error("evolution is not cyclic: |<psi0|psi(T)>| = {overlap:.9}")]
    NotCyclic { overlap: f64 },
}

pub type Result<T> = core::result::Result<T, PhaseError>;
