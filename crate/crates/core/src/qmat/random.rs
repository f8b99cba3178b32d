//! Seeded random unitaries and states.
//!
//! Randomness comes from ChaCha keyed by the caller's seed, with the stream
//! id used as a sub-counter. A draw is therefore a pure function of
//! `(seed, sub_counter)`; there is no shared generator state.

use num_complex::Complex;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal, Uniform};

use super::matrix::{inner, vector_norm, CMatrix, CVector, ComplexMatrix4};
use super::operators::{DensityMatrix, UnitaryMatrix};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Attempts before a degenerate draw is reported instead of retried.
const MAX_REDRAWS: u64 = 64;

/// Column norms below this are treated as linearly dependent.
const MIN_COLUMN_NORM: f64 = 1e-8;

pub(crate) fn rng_for(seed: u64, stream: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Standard complex Gaussian, `E|z|² = 1`.
pub(crate) fn complex_gaussian<T: Real>(rng: &mut ChaCha20Rng) -> Complex<T> {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Complex::new(T::lit(re * s), T::lit(im * s))
}

pub(crate) fn gaussian_matrix<T: Real, const N: usize>(rng: &mut ChaCha20Rng) -> CMatrix<T, N> {
    // row-major draw order is part of the determinism contract
    CMatrix::from_fn(|_, _| complex_gaussian(rng))
}

/// Modified Gram-Schmidt on the columns. The resulting `R` factor has a real
/// positive diagonal, which fixes the phase freedom of the QR decomposition
/// and makes `Q` Haar distributed for a Ginibre input.
pub(crate) fn orthonormalize_columns<T: Real, const N: usize>(
    m: &CMatrix<T, N>,
) -> Result<CMatrix<T, N>> {
    let mut cols: [CVector<T, N>; N] = std::array::from_fn(|k| m.column(k));
    for k in 0..N {
        for j in 0..k {
            let proj = inner(&cols[j], &cols[k]);
            let qj = cols[j];
            for (x, q) in cols[k].iter_mut().zip(qj.iter()) {
                *x -= *q * proj;
            }
        }
        let norm = vector_norm(&cols[k]);
        if norm.is_nan() || norm <= T::lit(MIN_COLUMN_NORM) {
            return Err(Error::DegenerateDraw {
                norm: norm.as_f64(),
            });
        }
        for x in cols[k].iter_mut() {
            *x /= norm;
        }
    }
    let mut q = CMatrix::zeros();
    for (k, col) in cols.iter().enumerate() {
        q.set_column(k, col);
    }
    Ok(q)
}

/// Approximately Haar-random 4x4 unitary, a pure function of `seed`.
pub fn random_unitary<T: Real>(seed: u64) -> UnitaryMatrix<T> {
    let mut sub = 0;
    loop {
        let mut rng = rng_for(seed, sub);
        match orthonormalize_columns(&gaussian_matrix::<T, 4>(&mut rng)) {
            Ok(q) => return UnitaryMatrix::new_unchecked(q),
            Err(Error::DegenerateDraw { .. }) if sub < MAX_REDRAWS => sub += 1,
            Err(e) => panic!("random_unitary: {e} after {MAX_REDRAWS} redraws"),
        }
    }
}

/// Rotation by a small random angle `scale·N(0,1)` in a uniformly chosen
/// coordinate plane `(i, j)`, with a uniform relative phase.
pub(crate) fn givens_perturbation<T: Real>(rng: &mut ChaCha20Rng, scale: T) -> UnitaryMatrix<T> {
    const PLANES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let plane = Uniform::new(0, PLANES.len()).expect("non-empty range");
    let (i, j) = PLANES[plane.sample(rng)];
    let angle: f64 = StandardNormal.sample(rng);
    let phase = Uniform::new(0.0, std::f64::consts::TAU)
        .expect("non-empty range")
        .sample(rng);
    let theta = scale * T::lit(angle);
    let (s, c) = theta.sin_cos();
    let e = Complex::from_polar(T::one(), T::lit(phase));
    let mut m = ComplexMatrix4::identity();
    m[(i, i)] = Complex::new(c, T::zero());
    m[(j, j)] = Complex::new(c, T::zero());
    m[(i, j)] = -e * s;
    m[(j, i)] = e.conj() * s;
    UnitaryMatrix::new_unchecked(m)
}

/// Random full-rank state `G G† / tr(G G†)` with `G` complex Ginibre
/// (Hilbert-Schmidt measure).
pub fn random_density_matrix<T: Real>(seed: u64) -> DensityMatrix<T> {
    let mut rng = rng_for(seed, u64::MAX);
    let g = gaussian_matrix::<T, 4>(&mut rng);
    let w = g * g.adjoint();
    let tr = w.trace().re;
    let mut m = w.scale_real(T::one() / tr);
    for i in 0..4 {
        m[(i, i)].im = T::zero();
    }
    DensityMatrix::new_unchecked(m)
}
