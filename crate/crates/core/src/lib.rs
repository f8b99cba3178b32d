//! Extractable work (ergotropy) of the two-qubit gravitational cat model in
//! thermal states.
//!
//! The numerics are generic over [`scalar::Real`] (`f32` and `f64`). The
//! aliases at the crate root fix the scalar to `f64`, which is what the
//! command line tools use.

pub mod ergotropy;
pub mod error;
pub mod gravcat;
pub mod qmat;
pub mod scalar;

pub use ergotropy::{
    ergotropy_double_sum, ergotropy_trace, ergotropy_with_oracle, oracle_min_energy, passive_state,
    population_spectrum, OracleConfig,
};
pub use error::{Error, Result};
pub use gravcat::{
    analytic_spectrum, build_hamiltonian, closed_form_gibbs_elements, omega_from_geometry,
    partition_function, thermal_populations, thermal_state, ThermalConvention,
    GRAVITATIONAL_CONSTANT,
};
pub use qmat::{expectation, hermitian_eig, kron2, random_density_matrix, random_unitary};
pub use scalar::Real;

pub type Complex64 = num_complex::Complex<f64>;
pub type ComplexMatrix2 = qmat::ComplexMatrix2<f64>;
pub type ComplexMatrix4 = qmat::ComplexMatrix4<f64>;
pub type HermitianOperator = qmat::HermitianOperator<f64>;
pub type UnitaryMatrix = qmat::UnitaryMatrix<f64>;
pub type DensityMatrix = qmat::DensityMatrix<f64>;
pub type SpectralDecomposition = qmat::SpectralDecomposition<f64>;
pub type ModelParams = gravcat::ModelParams<f64>;
pub type GravCatSpectrum = gravcat::GravCatSpectrum<f64>;
pub type GeometryParams = gravcat::GeometryParams<f64>;
pub type ThermalSpec = gravcat::ThermalSpec<f64>;
pub type PopulationSpectrum = ergotropy::PopulationSpectrum<f64>;
pub type ErgotropyReport = ergotropy::ErgotropyReport<f64>;
