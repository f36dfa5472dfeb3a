use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (anti-Hermitian residual {residual:.3e}, tolerance {tolerance:.3e})")]
    NotHermitian { residual: f64, tolerance: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("matrix is not positive semidefinite (eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid qubit count {n}: {reason}")]
    BadQubitCount { n: usize, reason: &'static str },

    #[error("invalid parameter: {0}")]
    BadParameter(String),

    #[error("state has weight {weight:.3e} outside the support of the reference operator")]
    SupportViolation { weight: f64 },

    #[error("invalid Schmidt coefficients ({u1}, {u2}): need 1 >= u1 >= u2 >= 0")]
    BadSchmidt { u1: f64, u2: f64 },

    #[error("negative radicand {radicand:.6e} in closed-form eigenvalue pair")]
    NegativeRadicand { radicand: f64 },

    #[error("margin is not finite at x = {x}")]
    NonFiniteMargin { x: f64 },

    #[error("criterion does not change sign on [0, 1)")]
    NoSignChange,

    #[error("criterion changes sign {count} times on the scan grid")]
    MultipleRoots { count: usize },
}
