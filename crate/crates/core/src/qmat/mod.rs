//! Fixed-size complex linear algebra: 2x2/4x4 matrices, Kronecker products,
//! the Hermitian eigensolver, spectral matrix functions and seeded random
//! unitaries.

mod eig;
mod matrix;
mod operators;
mod random;

pub use eig::{
    hermitian_eig, jacobi_eigen, orthonormality_defect, spectral_function, SpectralDecomposition,
    MAX_SWEEPS,
};
pub use matrix::{
    kron2, pauli_x, pauli_y, pauli_z, CMatrix, CVector, ComplexMatrix2, ComplexMatrix4,
};
pub use operators::{expectation, DensityMatrix, HermitianOperator, UnitaryMatrix};
pub use random::{random_density_matrix, random_unitary};

pub(crate) use matrix::inner;
pub(crate) use operators::trace_of_product;
pub(crate) use random::{givens_perturbation, rng_for};
