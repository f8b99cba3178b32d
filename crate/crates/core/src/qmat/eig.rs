//! Cyclic Jacobi eigensolver for small complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary, then annihilates the now-real pivot with a real plane rotation
//! (Numerical Recipes convention). The product of all rotations accumulates
//! into the eigenvector matrix.

use num_complex::Complex;
use num_traits::Zero;

use super::matrix::{inner, CMatrix, CVector, ComplexMatrix4};
use super::operators::HermitianOperator;
use crate::error::{Error, Result};
use crate::scalar::{cr, Real};

pub const MAX_SWEEPS: usize = 100;

/// Ascending eigenvalues with orthonormal eigenvectors stored as columns.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralDecomposition<T> {
    eigenvalues: [T; 4],
    eigenvectors: ComplexMatrix4<T>,
}

impl<T: Real> SpectralDecomposition<T> {
    /// Assembles a decomposition from known eigenpairs, checking ordering and
    /// orthonormality.
    pub fn from_parts(eigenvalues: [T; 4], eigenvectors: [CVector<T, 4>; 4]) -> Result<Self> {
        if eigenvalues.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::UnsortedSpectrum);
        }
        let mut m = ComplexMatrix4::zeros();
        for (k, v) in eigenvectors.iter().enumerate() {
            m.set_column(k, v);
        }
        let defect = m.unitarity_defect();
        if defect.is_nan() || defect > T::TOL_ALGEBRAIC {
            return Err(Error::NotOrthonormal {
                deviation: defect.as_f64(),
            });
        }
        Ok(Self {
            eigenvalues,
            eigenvectors: m,
        })
    }

    pub fn eigenvalues(&self) -> &[T; 4] {
        &self.eigenvalues
    }

    /// Eigenvector matrix; column `k` pairs with eigenvalue `k`.
    pub fn eigenvectors(&self) -> &ComplexMatrix4<T> {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, k: usize) -> CVector<T, 4> {
        self.eigenvectors.column(k)
    }

    /// `|v_k⟩⟨v_k|`
    pub fn projector(&self, k: usize) -> ComplexMatrix4<T> {
        let v = self.eigenvector(k);
        ComplexMatrix4::outer(&v, &v)
    }

    /// `Σ w_k |v_k⟩⟨v_k|` for arbitrary real weights.
    pub fn synthesize(&self, weights: &[T; 4]) -> ComplexMatrix4<T> {
        let v = &self.eigenvectors;
        ComplexMatrix4::from_fn(|i, j| {
            (0..4).fold(Complex::zero(), |acc, k| {
                if weights[k] == T::zero() {
                    acc
                } else {
                    acc + v[(i, k)] * v[(j, k)].conj() * weights[k]
                }
            })
        })
    }

    /// `Σ f(ε_k) |v_k⟩⟨v_k|`
    pub fn spectral_function(&self, f: impl Fn(T) -> T) -> Result<HermitianOperator<T>> {
        let mut weights = [T::zero(); 4];
        for (w, &e) in weights.iter_mut().zip(self.eigenvalues.iter()) {
            *w = f(e);
            if !w.is_finite() {
                return Err(Error::Overflow {
                    eigenvalue: e.as_f64(),
                });
            }
        }
        Ok(HermitianOperator::symmetrized(self.synthesize(&weights)))
    }

    pub fn reconstruct(&self) -> HermitianOperator<T> {
        HermitianOperator::symmetrized(self.synthesize(&self.eigenvalues))
    }
}

/// Free-function form of [`SpectralDecomposition::spectral_function`].
pub fn spectral_function<T: Real>(
    spec: &SpectralDecomposition<T>,
    f: impl Fn(T) -> T,
) -> Result<HermitianOperator<T>> {
    spec.spectral_function(f)
}

/// Eigendecomposition of a 4x4 Hermitian operator.
pub fn hermitian_eig<T: Real>(h: &HermitianOperator<T>) -> Result<SpectralDecomposition<T>> {
    let (values, vectors) = jacobi_eigen(h.matrix())?;
    Ok(SpectralDecomposition {
        eigenvalues: values,
        eigenvectors: vectors,
    })
}

fn off_diagonal_norm<T: Real, const N: usize>(a: &CMatrix<T, N>) -> T {
    let mut s = T::zero();
    for i in 0..N {
        for j in 0..N {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Jacobi iteration on any fixed-size Hermitian matrix. Returns eigenvalues
/// ascending (ties keep their diagonal position order) and eigenvectors as
/// matching columns.
pub fn jacobi_eigen<T: Real, const N: usize>(m: &CMatrix<T, N>) -> Result<([T; N], CMatrix<T, N>)> {
    let mut a = *m;
    let mut v = CMatrix::<T, N>::identity();
    let threshold = T::TOL_JACOBI * m.frobenius_norm().max(T::one());

    let mut sweeps = 0;
    let mut off = off_diagonal_norm(&a);
    while off >= threshold {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NonConvergence {
                sweeps,
                off_norm: off.as_f64(),
            });
        }
        for p in 0..N {
            for q in (p + 1)..N {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
        off = off_diagonal_norm(&a);
    }

    let mut order: [usize; N] = std::array::from_fn(|i| i);
    order.sort_by(|&i, &j| {
        a[(i, i)]
            .re
            .partial_cmp(&a[(j, j)].re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(i.cmp(&j))
    });
    let values = order.map(|i| a[(i, i)].re);
    let vectors = CMatrix::from_fn(|i, k| v[(i, order[k])]);
    Ok((values, vectors))
}

fn rotate<T: Real, const N: usize>(
    a: &mut CMatrix<T, N>,
    v: &mut CMatrix<T, N>,
    p: usize,
    q: usize,
) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == T::zero() {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // e^{-iθ} where a_pq = |a_pq| e^{iθ}
    let phase = apq.conj() / mag;

    let theta = (aqq - app) / (T::lit(2.0) * mag);
    let t = if theta.is_infinite() {
        T::zero()
    } else {
        let t = T::one() / (theta.abs() + (theta * theta + T::one()).sqrt());
        if theta < T::zero() {
            -t
        } else {
            t
        }
    };
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;

    // G = diag(1, e^{-iθ}) · [[c, s], [-s, c]] restricted to (p, q)
    let g_pp = cr(c);
    let g_pq = cr(s);
    let g_qp = phase * (-s);
    let g_qq = phase * c;

    for k in 0..N {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
    }
    for k in 0..N {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = Complex::zero();
    a[(q, p)] = Complex::zero();
    a[(p, p)] = cr(app - t * mag);
    a[(q, q)] = cr(aqq + t * mag);

    for k in 0..N {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}

/// Largest deviation of `⟨v_i|v_j⟩` from `δ_ij` over the columns.
pub fn orthonormality_defect<T: Real>(vectors: &ComplexMatrix4<T>) -> T {
    let cols: [CVector<T, 4>; 4] = std::array::from_fn(|k| vectors.column(k));
    let mut worst = T::zero();
    for i in 0..4 {
        for j in 0..4 {
            let target = if i == j { T::one() } else { T::zero() };
            worst = worst.max((inner(&cols[i], &cols[j]) - cr(target)).norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::matrix::{kron2, pauli_x, pauli_z, ComplexMatrix2};
    use num_complex::Complex64;

    fn op(m: ComplexMatrix4<f64>) -> HermitianOperator<f64> {
        HermitianOperator::new(m).unwrap()
    }

    #[test]
    fn diagonal_input_is_sorted() {
        let spec = hermitian_eig(&op(ComplexMatrix4::diagonal([3.0, 1.0, 2.0, 0.0]))).unwrap();
        assert_eq!(spec.eigenvalues(), &[0.0, 1.0, 2.0, 3.0]);
        // permuted basis vectors
        assert_eq!(spec.eigenvector(0)[3], Complex64::new(1.0, 0.0));
        assert_eq!(spec.eigenvector(3)[0], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn decoupled_hamiltonian_spectrum() {
        let z = pauli_z::<f64>();
        let i = ComplexMatrix2::identity();
        let h = op((kron2(&z, &i) + kron2(&i, &z)).scale_real(0.5));
        let spec = hermitian_eig(&h).unwrap();
        assert_eq!(spec.eigenvalues(), &[-1.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn sigma_x_sigma_x_spectrum() {
        let spec = hermitian_eig(&op(kron2(&pauli_x(), &pauli_x()))).unwrap();
        let want = [-1.0, -1.0, 1.0, 1.0];
        for (got, want) in spec.eigenvalues().iter().zip(want) {
            assert!((got - want).abs() < 1e-14);
        }
        assert!(orthonormality_defect(spec.eigenvectors()) < 1e-14);
    }

    #[test]
    fn complex_hermitian_reconstruction() {
        let rows = [
            [(2.0, 0.0), (0.3, -0.7), (0.0, 1.2), (-0.4, 0.1)],
            [(0.3, 0.7), (-1.0, 0.0), (0.5, 0.5), (0.0, -0.2)],
            [(0.0, -1.2), (0.5, -0.5), (0.25, 0.0), (1.0, 0.0)],
            [(-0.4, -0.1), (0.0, 0.2), (1.0, 0.0), (-3.0, 0.0)],
        ]
        .map(|r| r.map(|(a, b)| Complex64::new(a, b)));
        let h = op(ComplexMatrix4::from_rows(rows).unwrap());
        let spec = hermitian_eig(&h).unwrap();
        assert!(spec.eigenvalues().windows(2).all(|w| w[0] <= w[1]));
        assert!(orthonormality_defect(spec.eigenvectors()) < 1e-10);
        assert!(spec.reconstruct().matrix().max_abs_diff(h.matrix()) < 1e-10);
        let tr: f64 = spec.eigenvalues().iter().sum();
        assert!((tr - (2.0 - 1.0 + 0.25 - 3.0)).abs() < 1e-12);
    }

    #[test]
    fn spectral_function_identities() {
        let h = op(kron2(&pauli_x(), &pauli_x()).scale_real(0.7)
            + ComplexMatrix4::diagonal([0.2, -0.1, 0.4, 0.0]));
        let spec = hermitian_eig(&h).unwrap();
        let same = spec.spectral_function(|x| x).unwrap();
        assert!(same.matrix().max_abs_diff(h.matrix()) < 1e-10);
        let one = spec.spectral_function(|_| 1.0).unwrap();
        assert!(one.matrix().max_abs_diff(&ComplexMatrix4::identity()) < 1e-10);
    }

    #[test]
    fn spectral_exp_on_diagonal() {
        let ln2 = std::f64::consts::LN_2;
        let spec = hermitian_eig(&op(ComplexMatrix4::diagonal([0.0, ln2, 0.0, 0.0]))).unwrap();
        let e = spec.spectral_function(f64::exp).unwrap();
        assert!(
            e.matrix()
                .max_abs_diff(&ComplexMatrix4::diagonal([1.0, 2.0, 1.0, 1.0]))
                < 1e-15
        );
    }

    #[test]
    fn spectral_function_overflow() {
        let spec = hermitian_eig(&op(ComplexMatrix4::diagonal([0.0, 1000.0, 0.0, 0.0]))).unwrap();
        assert_eq!(
            spec.spectral_function(f64::exp),
            Err(Error::Overflow { eigenvalue: 1000.0 })
        );
    }

    #[test]
    fn from_parts_validates() {
        let basis: [CVector<f64, 4>; 4] = std::array::from_fn(|k| {
            std::array::from_fn(|i| Complex64::new((i == k) as u8 as f64, 0.0))
        });
        assert!(SpectralDecomposition::from_parts([0.0, 1.0, 2.0, 3.0], basis).is_ok());
        assert_eq!(
            SpectralDecomposition::from_parts([1.0, 0.0, 2.0, 3.0], basis),
            Err(Error::UnsortedSpectrum)
        );
        let mut bad = basis;
        bad[1] = bad[0];
        assert!(matches!(
            SpectralDecomposition::from_parts([0.0, 1.0, 2.0, 3.0], bad),
            Err(Error::NotOrthonormal { .. })
        ));
    }

    #[test]
    fn single_precision_solver() {
        let h = HermitianOperator::<f32>::new(kron2(&pauli_x(), &pauli_x())).unwrap();
        let spec = hermitian_eig(&h).unwrap();
        for (got, want) in spec.eigenvalues().iter().zip([-1.0f32, -1.0, 1.0, 1.0]) {
            assert!((got - want).abs() < 1e-5);
        }
    }
}
