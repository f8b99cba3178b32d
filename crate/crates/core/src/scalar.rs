//! Scalar abstraction and the tolerance table.
//!
//! Every numeric routine in this crate is generic over [`Real`], which is
//! implemented for `f32` and `f64`. The thresholds used to validate
//! constructions, algebraic identities and derived quantities all live here,
//! one set per precision.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating point scalar usable by the linear algebra kernel and the model.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Hermiticity, trace and finiteness checks on construction.
    const TOL_CONSTRUCTION: Self;
    /// Algebraic identities: unitarity, orthonormality, reconstruction.
    const TOL_ALGEBRAIC: Self;
    /// Quantities derived through several numerical steps.
    const TOL_DERIVED: Self;
    /// Off-diagonal norm at which a Jacobi sweep is considered converged,
    /// relative to `max(1, ‖A‖_F)`.
    const TOL_JACOBI: Self;
    /// Eigenvalues of a state above `-TOL_CLAMP` are clamped to zero.
    const TOL_CLAMP: Self;

    /// Converts an `f64` literal. Every `f64` is representable (possibly
    /// rounded) in both implementors.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal converts to every Real")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const TOL_CONSTRUCTION: Self = 1e-12;
    const TOL_ALGEBRAIC: Self = 1e-10;
    const TOL_DERIVED: Self = 1e-9;
    const TOL_JACOBI: Self = 1e-14;
    const TOL_CLAMP: Self = 1e-10;
}

impl Real for f32 {
    const TOL_CONSTRUCTION: Self = 1e-5;
    const TOL_ALGEBRAIC: Self = 1e-4;
    const TOL_DERIVED: Self = 1e-3;
    const TOL_JACOBI: Self = 1e-6;
    const TOL_CLAMP: Self = 1e-5;
}

pub(crate) fn cr<T: Real>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}
