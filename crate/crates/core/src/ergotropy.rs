//! Passive states and ergotropy.
//!
//! The passive state pairs the populations of `ρ`, sorted in descending
//! order, with the eigenvectors of `H`, sorted by ascending energy. The
//! ergotropy is the energy difference between `ρ` and that state. It is
//! computed two ways (trace difference and the overlap double sum) and can be
//! bounded from above by a randomized search over the unitary orbit.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qmat::{
    expectation, givens_perturbation, hermitian_eig, inner, jacobi_eigen, random_unitary, rng_for,
    trace_of_product, ComplexMatrix4, DensityMatrix, HermitianOperator, SpectralDecomposition,
    UnitaryMatrix,
};
use crate::scalar::Real;

/// Eigenvalues of a state in descending order with matching eigenvectors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PopulationSpectrum<T> {
    populations: [T; 4],
    vectors: ComplexMatrix4<T>,
}

impl<T: Real> PopulationSpectrum<T> {
    pub fn populations(&self) -> &[T; 4] {
        &self.populations
    }

    /// Column `n` is the eigenvector carrying population `n`.
    pub fn vectors(&self) -> &ComplexMatrix4<T> {
        &self.vectors
    }
}

pub fn population_spectrum<T: Real>(rho: &DensityMatrix<T>) -> Result<PopulationSpectrum<T>> {
    let (ascending, vecs) = jacobi_eigen(rho.matrix())?;
    if ascending[0] < -T::TOL_CLAMP {
        return Err(Error::NotAState {
            eigenvalue: ascending[0].as_f64(),
        });
    }
    let mut populations = [T::zero(); 4];
    let mut vectors = ComplexMatrix4::zeros();
    for n in 0..4 {
        populations[n] = ascending[3 - n].max(T::zero());
        vectors.set_column(n, &vecs.column(3 - n));
    }
    let total: T = populations.iter().copied().sum();
    for r in populations.iter_mut() {
        *r /= total;
    }
    Ok(PopulationSpectrum {
        populations,
        vectors,
    })
}

/// `ξ = Σ r_n |ε_n⟩⟨ε_n|`. Commutes with `H`.
pub fn passive_state<T: Real>(
    pops: &PopulationSpectrum<T>,
    h_spec: &SpectralDecomposition<T>,
) -> DensityMatrix<T> {
    DensityMatrix::new_unchecked(h_spec.synthesize(&pops.populations))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErgotropyReport<T> {
    /// `tr(Hρ)`
    pub energy: T,
    /// `tr(Hξ)`
    pub passive_energy: T,
    pub ergotropy: T,
    /// Lowest energy found on the unitary orbit by [`oracle_min_energy`].
    pub oracle_min_energy: Option<T>,
}

impl<T: Real> ErgotropyReport<T> {
    /// Oracle energy minus passive energy; non-negative up to round-off.
    pub fn oracle_gap(&self) -> Option<T> {
        self.oracle_min_energy.map(|e| e - self.passive_energy)
    }
}

/// Ergotropy as `tr(Hρ) − tr(Hξ)`.
pub fn ergotropy_trace<T: Real>(
    rho: &DensityMatrix<T>,
    h: &HermitianOperator<T>,
) -> Result<ErgotropyReport<T>> {
    let h_spec = hermitian_eig(h)?;
    let pops = population_spectrum(rho)?;
    let xi = passive_state(&pops, &h_spec);
    let energy = expectation(h, rho);
    let passive_energy = expectation(h, &xi);
    Ok(ErgotropyReport {
        energy,
        passive_energy,
        ergotropy: energy - passive_energy,
        oracle_min_energy: None,
    })
}

/// Ergotropy as `Σ_{n,m} r_n ε_m (|⟨r_n|ε_m⟩|² − δ_nm)`.
pub fn ergotropy_double_sum<T: Real>(
    rho: &DensityMatrix<T>,
    h: &HermitianOperator<T>,
) -> Result<T> {
    let h_spec = hermitian_eig(h)?;
    let pops = population_spectrum(rho)?;
    let mut total = T::zero();
    for n in 0..4 {
        let r_vec = pops.vectors.column(n);
        for m in 0..4 {
            let e_vec = h_spec.eigenvector(m);
            let overlap = inner(&r_vec, &e_vec).norm_sqr();
            let delta = if n == m { T::one() } else { T::zero() };
            total += pops.populations[n] * h_spec.eigenvalues()[m] * (overlap - delta);
        }
    }
    Ok(total)
}

/// Settings for the unitary-orbit search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    n_samples: usize,
    refine_steps: usize,
    seed: u64,
}

impl OracleConfig {
    pub fn new(n_samples: usize, refine_steps: usize, seed: u64) -> Result<Self> {
        if n_samples == 0 {
            return Err(Error::InvalidParameter {
                name: "n_samples",
                value: 0.0,
                reason: "at least one sample is required",
            });
        }
        Ok(Self {
            n_samples,
            refine_steps,
            seed,
        })
    }

    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    pub fn refine_steps(&self) -> usize {
        self.refine_steps
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Same settings with a different seed.
    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            n_samples: 2000,
            refine_steps: 5000,
            seed: 0,
        }
    }
}

const REFINE_STREAM: u64 = 0x5245_4649_4e45;
const REFINE_SCALE_START: f64 = 0.3;
const REFINE_SCALE_END: f64 = 1e-4;

fn orbit_energy<T: Real>(
    h: &ComplexMatrix4<T>,
    rho: &ComplexMatrix4<T>,
    u: &ComplexMatrix4<T>,
) -> T {
    trace_of_product(h, &(*u * *rho * u.adjoint()))
}

/// Minimum of `tr(H U ρ U†)` over seeded random unitaries, followed by
/// greedy refinement with shrinking random rotations.
///
/// Sample `k` uses the unitary seeded by `seed + k`, so the sampled minimum
/// (ties broken by the lowest index) does not depend on how the samples are
/// split across threads.
pub fn oracle_min_energy<T: Real>(
    rho: &DensityMatrix<T>,
    h: &HermitianOperator<T>,
    cfg: &OracleConfig,
) -> T {
    let hm = h.matrix();
    let rm = rho.matrix();
    let sampled = (0..cfg.n_samples as u64)
        .into_par_iter()
        .map(|k| {
            let u = random_unitary::<T>(cfg.seed.wrapping_add(k));
            (orbit_energy(hm, rm, u.matrix()), k, u)
        })
        .reduce_with(|a, b| match a.0.partial_cmp(&b.0) {
            Some(std::cmp::Ordering::Less) => a,
            Some(std::cmp::Ordering::Greater) => b,
            _ if a.1 <= b.1 => a,
            _ => b,
        })
        .expect("n_samples >= 1");

    let (mut best, _, mut u) = sampled;
    refine(hm, rm, &mut u, &mut best, cfg);
    best
}

fn refine<T: Real>(
    hm: &ComplexMatrix4<T>,
    rm: &ComplexMatrix4<T>,
    u: &mut UnitaryMatrix<T>,
    best: &mut T,
    cfg: &OracleConfig,
) {
    let steps = cfg.refine_steps;
    if steps == 0 {
        return;
    }
    // Rotations are drawn in the eigenbasis of H: each plane then moves
    // population between just two levels, and the search does not stall on
    // strongly ordered states.
    let v = HermitianOperator::new(*hm)
        .and_then(|h| hermitian_eig(&h))
        .map(|d| *d.eigenvectors())
        .unwrap_or_else(|_| ComplexMatrix4::identity());
    let v_adj = v.adjoint();
    let mut rng = rng_for(cfg.seed, REFINE_STREAM);
    let ratio = REFINE_SCALE_END / REFINE_SCALE_START;
    for i in 0..steps {
        let frac = if steps == 1 {
            0.0
        } else {
            i as f64 / (steps - 1) as f64
        };
        let scale = T::lit(REFINE_SCALE_START * ratio.powf(frac));
        let r = givens_perturbation(&mut rng, scale);
        let candidate = UnitaryMatrix::new_unchecked(v * *r.matrix() * v_adj * *u.matrix());
        let e = orbit_energy(hm, rm, candidate.matrix());
        if e < *best {
            *best = e;
            *u = candidate;
        }
    }
}

/// [`ergotropy_trace`] with the oracle bound attached.
pub fn ergotropy_with_oracle<T: Real>(
    rho: &DensityMatrix<T>,
    h: &HermitianOperator<T>,
    cfg: &OracleConfig,
) -> Result<ErgotropyReport<T>> {
    let mut report = ergotropy_trace(rho, h)?;
    report.oracle_min_energy = Some(oracle_min_energy(rho, h, cfg));
    Ok(report)
}
