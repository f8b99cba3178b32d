use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{cr, Real};

/// Column vector of `N` complex amplitudes.
pub type CVector<T, const N: usize> = [Complex<T>; N];

/// Dense `N x N` complex matrix stored row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMatrix<T, const N: usize> {
    rows: [[Complex<T>; N]; N],
}

pub type ComplexMatrix2<T> = CMatrix<T, 2>;
pub type ComplexMatrix4<T> = CMatrix<T, 4>;

impl<T: Real, const N: usize> CMatrix<T, N> {
    /// Builds a matrix from rows, rejecting NaN and infinite entries.
    pub fn from_rows(rows: [[Complex<T>; N]; N]) -> Result<Self> {
        for (i, row) in rows.iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(Self { rows })
    }

    /// Builds a matrix from real rows.
    pub fn from_real_rows(rows: [[T; N]; N]) -> Result<Self> {
        Self::from_rows(rows.map(|r| r.map(cr)))
    }

    pub(crate) fn from_rows_unchecked(rows: [[Complex<T>; N]; N]) -> Self {
        Self { rows }
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.rows[i][j] = f(i, j);
            }
        }
        m
    }

    pub fn zeros() -> Self {
        Self {
            rows: [[Complex::zero(); N]; N],
        }
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| {
            if i == j {
                Complex::one()
            } else {
                Complex::zero()
            }
        })
    }

    pub fn diagonal(values: [T; N]) -> Self {
        Self::from_fn(|i, j| {
            if i == j {
                cr(values[i])
            } else {
                Complex::zero()
            }
        })
    }

    /// `|v⟩⟨w|`
    pub fn outer(v: &CVector<T, N>, w: &CVector<T, N>) -> Self {
        Self::from_fn(|i, j| v[i] * w[j].conj())
    }

    pub fn rows(&self) -> &[[Complex<T>; N]; N] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> CVector<T, N> {
        std::array::from_fn(|i| self.rows[i][j])
    }

    pub fn set_column(&mut self, j: usize, v: &CVector<T, N>) {
        for (i, z) in v.iter().enumerate() {
            self.rows[i][j] = *z;
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.rows[j][i].conj())
    }

    pub fn trace(&self) -> Complex<T> {
        (0..N)
            .map(|i| self.rows[i][i])
            .fold(Complex::zero(), |a, b| a + b)
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self::from_fn(|i, j| self.rows[i][j] * s)
    }

    pub fn scale_real(&self, s: T) -> Self {
        Self::from_fn(|i, j| self.rows[i][j] * s)
    }

    pub fn apply(&self, v: &CVector<T, N>) -> CVector<T, N> {
        std::array::from_fn(|i| (0..N).fold(Complex::zero(), |acc, j| acc + self.rows[i][j] * v[j]))
    }

    /// `[A, B] = AB - BA`
    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    pub fn frobenius_norm(&self) -> T {
        self.rows
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<T>()
            .sqrt()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.rows
            .iter()
            .flatten()
            .zip(other.rows.iter().flatten())
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), T::max)
    }

    /// Largest entrywise deviation from Hermiticity.
    pub fn hermiticity_defect(&self) -> T {
        self.max_abs_diff(&self.adjoint())
    }

    /// Largest entrywise deviation of `U†U` from the identity.
    pub fn unitarity_defect(&self) -> T {
        (self.adjoint() * *self).max_abs_diff(&Self::identity())
    }

    pub fn is_finite(&self) -> bool {
        self.rows
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl<T, const N: usize> Index<(usize, usize)> for CMatrix<T, N> {
    type Output = Complex<T>;

    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.rows[i][j]
    }
}

impl<T, const N: usize> IndexMut<(usize, usize)> for CMatrix<T, N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.rows[i][j]
    }
}

impl<T: Real, const N: usize> Mul for CMatrix<T, N> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..N {
                    out.rows[i][j] += a * rhs.rows[k][j];
                }
            }
        }
        out
    }
}

impl<T: Real, const N: usize> Add for CMatrix<T, N> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.rows[i][j] + rhs.rows[i][j])
    }
}

impl<T: Real, const N: usize> Sub for CMatrix<T, N> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.rows[i][j] - rhs.rows[i][j])
    }
}

impl<T: Real, const N: usize> Neg for CMatrix<T, N> {
    type Output = Self;

    fn neg(self) -> Self {
        Self::from_fn(|i, j| -self.rows[i][j])
    }
}

/// Kronecker product `a ⊗ b`, the first factor acting on the left qubit.
///
/// With `|e⟩ = (1, 0)` and `|g⟩ = (0, 1)` the product basis is
/// `{|ee⟩, |eg⟩, |ge⟩, |gg⟩}`.
pub fn kron2<T: Real>(a: &ComplexMatrix2<T>, b: &ComplexMatrix2<T>) -> ComplexMatrix4<T> {
    CMatrix::from_fn(|i, j| a[(i / 2, j / 2)] * b[(i % 2, j % 2)])
}

pub fn pauli_x<T: Real>() -> ComplexMatrix2<T> {
    let (o, l) = (T::zero(), T::one());
    CMatrix::from_rows_unchecked([[cr(o), cr(l)], [cr(l), cr(o)]])
}

pub fn pauli_y<T: Real>() -> ComplexMatrix2<T> {
    let (o, l) = (T::zero(), T::one());
    CMatrix::from_rows_unchecked([[cr(o), Complex::new(o, -l)], [Complex::new(o, l), cr(o)]])
}

pub fn pauli_z<T: Real>() -> ComplexMatrix2<T> {
    CMatrix::diagonal([T::one(), -T::one()])
}

pub(crate) fn inner<T: Real, const N: usize>(v: &CVector<T, N>, w: &CVector<T, N>) -> Complex<T> {
    v.iter()
        .zip(w.iter())
        .fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * *b)
}

pub(crate) fn vector_norm<T: Real, const N: usize>(v: &CVector<T, N>) -> T {
    v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = ComplexMatrix2::<f64>::identity();
        assert_eq!(kron2(&i2, &i2), ComplexMatrix4::identity());
    }

    #[test]
    fn kron_sigma_z_identity_is_diagonal() {
        let m = kron2(&pauli_z::<f64>(), &ComplexMatrix2::identity());
        assert_eq!(m, ComplexMatrix4::diagonal([1.0, 1.0, -1.0, -1.0]));
    }

    #[test]
    fn kron_sigma_x_sigma_x_is_antidiagonal() {
        let m = kron2(&pauli_x::<f64>(), &pauli_x());
        for i in 0..4 {
            for j in 0..4 {
                let want = if i + j == 3 { 1.0 } else { 0.0 };
                assert_eq!(m[(i, j)], c(want, 0.0));
            }
        }
    }

    #[test]
    fn non_finite_entries_rejected() {
        let mut rows = [[c(0.0, 0.0); 2]; 2];
        rows[1][0] = c(f64::NAN, 0.0);
        assert_eq!(
            ComplexMatrix2::from_rows(rows),
            Err(Error::NonFinite { row: 1, col: 0 })
        );
    }

    #[test]
    fn paulis_anticommute() {
        let (x, y, z) = (pauli_x::<f64>(), pauli_y::<f64>(), pauli_z::<f64>());
        // xy = iz
        let iz = z.scale(c(0.0, 1.0));
        assert!((x * y).max_abs_diff(&iz) < 1e-15);
        assert!((x * y + y * x).frobenius_norm() < 1e-15);
    }
}
