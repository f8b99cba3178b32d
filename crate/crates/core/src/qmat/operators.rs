use num_complex::Complex;

use super::eig::hermitian_eig;
use super::matrix::ComplexMatrix4;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Self-adjoint 4x4 operator (Hamiltonians, observables).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HermitianOperator<T> {
    matrix: ComplexMatrix4<T>,
}

impl<T: Real> HermitianOperator<T> {
    /// Accepts `matrix` if it equals its adjoint within the construction
    /// tolerance. The stored matrix is symmetrized exactly.
    pub fn new(matrix: ComplexMatrix4<T>) -> Result<Self> {
        check_finite(&matrix)?;
        let defect = matrix.hermiticity_defect();
        if defect > T::TOL_CONSTRUCTION {
            return Err(Error::NotHermitian {
                deviation: defect.as_f64(),
            });
        }
        Ok(Self::symmetrized(matrix))
    }

    pub(crate) fn symmetrized(matrix: ComplexMatrix4<T>) -> Self {
        let half = T::lit(0.5);
        let adj = matrix.adjoint();
        let mut m = ComplexMatrix4::from_fn(|i, j| (matrix[(i, j)] + adj[(i, j)]) * half);
        for i in 0..4 {
            m[(i, i)].im = T::zero();
        }
        Self { matrix: m }
    }

    pub fn matrix(&self) -> &ComplexMatrix4<T> {
        &self.matrix
    }

    /// `H + c·I`
    pub fn shifted(&self, c: T) -> Self {
        let mut m = self.matrix;
        for i in 0..4 {
            m[(i, i)].re += c;
        }
        Self { matrix: m }
    }

    /// `U H U†`
    pub fn conjugated(&self, u: &UnitaryMatrix<T>) -> Self {
        Self::symmetrized(u.matrix * self.matrix * u.matrix.adjoint())
    }
}

/// 4x4 unitary, `U†U = I`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitaryMatrix<T> {
    matrix: ComplexMatrix4<T>,
}

impl<T: Real> UnitaryMatrix<T> {
    pub fn new(matrix: ComplexMatrix4<T>) -> Result<Self> {
        check_finite(&matrix)?;
        let defect = matrix.unitarity_defect();
        if defect > T::TOL_ALGEBRAIC {
            return Err(Error::NotUnitary {
                deviation: defect.as_f64(),
            });
        }
        Ok(Self { matrix })
    }

    pub(crate) fn new_unchecked(matrix: ComplexMatrix4<T>) -> Self {
        Self { matrix }
    }

    pub fn identity() -> Self {
        Self {
            matrix: ComplexMatrix4::identity(),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix4<T> {
        &self.matrix
    }

    pub fn adjoint(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
        }
    }

    /// `self · other`
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            matrix: self.matrix * other.matrix,
        }
    }
}

/// Unit-trace positive semidefinite 4x4 Hermitian matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix<T> {
    matrix: ComplexMatrix4<T>,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates Hermiticity, unit trace and positivity (eigenvalues no
    /// lower than `-TOL_CLAMP`).
    pub fn new(matrix: ComplexMatrix4<T>) -> Result<Self> {
        let h = HermitianOperator::new(matrix)?;
        let trace = h.matrix.trace().re;
        if (trace - T::one()).abs() > T::TOL_CONSTRUCTION {
            return Err(Error::InvalidTrace {
                trace: trace.as_f64(),
            });
        }
        let spec = hermitian_eig(&h)?;
        let lowest = spec.eigenvalues()[0];
        if lowest < -T::TOL_CLAMP {
            return Err(Error::NotAState {
                eigenvalue: lowest.as_f64(),
            });
        }
        Ok(Self { matrix: h.matrix })
    }

    /// For matrices that are states by construction (spectral synthesis
    /// from a probability vector and an orthonormal basis).
    pub(crate) fn new_unchecked(matrix: ComplexMatrix4<T>) -> Self {
        Self { matrix }
    }

    /// The maximally mixed state `I/4`.
    pub fn maximally_mixed() -> Self {
        Self {
            matrix: ComplexMatrix4::identity().scale_real(T::lit(0.25)),
        }
    }

    /// `|ψ⟩⟨ψ|` for a normalized `ψ`.
    pub fn pure(psi: &[Complex<T>; 4]) -> Result<Self> {
        let norm = super::matrix::vector_norm(psi);
        if (norm - T::one()).abs() > T::TOL_ALGEBRAIC {
            return Err(Error::InvalidTrace {
                trace: (norm * norm).as_f64(),
            });
        }
        Ok(Self {
            matrix: ComplexMatrix4::outer(psi, psi),
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix4<T> {
        &self.matrix
    }

    pub fn as_operator(&self) -> HermitianOperator<T> {
        HermitianOperator {
            matrix: self.matrix,
        }
    }

    /// `U ρ U†`
    pub fn conjugated(&self, u: &UnitaryMatrix<T>) -> Self {
        Self {
            matrix: u.matrix * self.matrix * u.matrix.adjoint(),
        }
    }
}

/// `tr(H ρ)`.
pub fn expectation<T: Real>(h: &HermitianOperator<T>, rho: &DensityMatrix<T>) -> T {
    trace_of_product(h.matrix(), rho.matrix())
}

/// `tr(A B)` without forming the product. The imaginary part vanishes for
/// two Hermitian arguments and is dropped.
pub(crate) fn trace_of_product<T: Real>(a: &ComplexMatrix4<T>, b: &ComplexMatrix4<T>) -> T {
    let mut acc = Complex::new(T::zero(), T::zero());
    for i in 0..4 {
        for k in 0..4 {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    debug_assert!(acc.im.abs() < T::TOL_ALGEBRAIC * (T::one() + acc.re.abs()));
    acc.re
}

fn check_finite<T: Real>(m: &ComplexMatrix4<T>) -> Result<()> {
    for i in 0..4 {
        for j in 0..4 {
            let z = m[(i, j)];
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::NonFinite { row: i, col: j });
            }
        }
    }
    Ok(())
}
