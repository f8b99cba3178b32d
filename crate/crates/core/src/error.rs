use thiserror::Error;

/// Errors raised by the linear algebra kernel, the model and the ergotropy
/// routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not unitary (deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("eigenvectors are not orthonormal (deviation {deviation:e})")]
    NotOrthonormal { deviation: f64 },

    #[error("eigenvalues are not sorted in ascending order")]
    UnsortedSpectrum,

    #[error(
        "Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})"
    )]
    NonConvergence { sweeps: usize, off_norm: f64 },

    #[error("spectral function is not finite at eigenvalue {eigenvalue}")]
    Overflow { eigenvalue: f64 },

    #[error("exponent {exponent} too large for direct evaluation of the partition function")]
    PartitionOverflow { exponent: f64 },

    #[error("orthonormalization met a near-zero column (norm {norm:e})")]
    DegenerateDraw { norm: f64 },

    #[error("trace is {trace}, expected 1")]
    InvalidTrace { trace: f64 },

    #[error("not a state: eigenvalue {eigenvalue:e} is negative")]
    NotAState { eigenvalue: f64 },

    #[error("negative coupling: d = {d} exceeds d' = {d_prime}")]
    NegativeCoupling { d: f64, d_prime: f64 },

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
