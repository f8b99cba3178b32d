//! The two-qubit gravitational cat model.
//!
//! `H = ω/2 (σz⊗I + I⊗σz) − Ω σx⊗σx` in the basis `{|ee⟩, |eg⟩, |ge⟩, |gg⟩}`
//! with `|e⟩ = (1, 0)`. The spectrum is `(−Δ, −Ω, Ω, Δ)` with
//! `Δ = √(Ω² + ω²)`; the outer pair lives in the `ee/gg` block and the inner
//! pair in the `eg/ge` block, so every thermal state built from these
//! eigenvectors is an X-state.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::qmat::{
    kron2, pauli_x, pauli_z, CVector, ComplexMatrix2, ComplexMatrix4, DensityMatrix,
    HermitianOperator, SpectralDecomposition,
};
use crate::scalar::{cr, Real};

/// Newtonian constant of gravitation (CODATA), m³·kg⁻¹·s⁻².
pub const GRAVITATIONAL_CONSTANT: f64 = 6.674e-11;

/// Largest `βΔ` for which the partition function is evaluated directly.
pub const MAX_DIRECT_EXPONENT: f64 = 700.0;

/// Level splitting `ω` and gravitational coupling `Ω`, in energy units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams<T> {
    omega: T,
    coupling: T,
}

impl<T: Real> ModelParams<T> {
    pub fn new(omega: T, coupling: T) -> Result<Self> {
        if !(omega > T::zero() && omega.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "omega",
                value: omega.as_f64(),
                reason: "must be positive and finite",
            });
        }
        if !(coupling >= T::zero() && coupling.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "coupling",
                value: coupling.as_f64(),
                reason: "must be non-negative and finite",
            });
        }
        Ok(Self { omega, coupling })
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    pub fn coupling(&self) -> T {
        self.coupling
    }

    /// `Δ = √(Ω² + ω²)`
    pub fn delta(&self) -> T {
        self.coupling.hypot(self.omega)
    }
}

/// Closed-form spectrum and eigenstates of the model Hamiltonian.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GravCatSpectrum<T> {
    pub delta: T,
    pub phi_plus: T,
    pub phi_minus: T,
    /// `(−Δ, −Ω, Ω, Δ)`
    pub eigenvalues: [T; 4],
    pub eigenstates: [CVector<T, 4>; 4],
}

impl<T: Real> GravCatSpectrum<T> {
    pub fn decomposition(&self) -> SpectralDecomposition<T> {
        SpectralDecomposition::from_parts(self.eigenvalues, self.eigenstates)
            .expect("analytic eigenbasis is orthonormal and sorted")
    }
}

pub fn build_hamiltonian<T: Real>(p: &ModelParams<T>) -> HermitianOperator<T> {
    let id = ComplexMatrix2::<T>::identity();
    let z = pauli_z::<T>();
    let x = pauli_x::<T>();
    let local = (kron2(&z, &id) + kron2(&id, &z)).scale_real(p.omega / T::lit(2.0));
    let interaction = kron2(&x, &x).scale_real(p.coupling);
    HermitianOperator::new(local - interaction).expect("model Hamiltonian is Hermitian")
}

/// Eigenpairs from the closed form.
///
/// `φ₊ = arctan(Ω/(ω+Δ))` and `φ₋ = arctan(Ω/(ω−Δ))`. The second is
/// evaluated as `−atan2(ω+Δ, Ω)`, which avoids the cancellation in `ω−Δ`
/// and takes the `Ω → 0⁺` limit `−π/2` at `Ω = 0`.
pub fn analytic_spectrum<T: Real>(p: &ModelParams<T>) -> GravCatSpectrum<T> {
    let (omega, coupling) = (p.omega, p.coupling);
    let delta = p.delta();
    let phi_plus = coupling.atan2(omega + delta);
    let phi_minus = -(omega + delta).atan2(coupling);

    let o = cr(T::zero());
    let h = cr(T::FRAC_1_SQRT_2());
    let ee_gg = |phi: T| [cr(phi.sin()), o, o, cr(phi.cos())];
    let eigenstates = [
        ee_gg(phi_plus),
        // (|ge⟩ + |eg⟩)/√2
        [o, h, h, o],
        // (|ge⟩ − |eg⟩)/√2
        [o, -h, h, o],
        ee_gg(phi_minus),
    ];
    GravCatSpectrum {
        delta,
        phi_plus,
        phi_minus,
        eigenvalues: [-delta, -coupling, coupling, delta],
        eigenstates,
    }
}

/// Masses and distances entering the coupling.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeometryParams<T> {
    mass: T,
    d: T,
    d_prime: T,
    g: T,
}

impl<T: Real> GeometryParams<T> {
    /// `d` and `d_prime` are the separations when both particles sit in the
    /// same, respectively different, relative minimum.
    pub fn new(mass: T, d: T, d_prime: T) -> Result<Self> {
        Self::with_constant(mass, d, d_prime, T::lit(GRAVITATIONAL_CONSTANT))
    }

    pub fn with_constant(mass: T, d: T, d_prime: T, g: T) -> Result<Self> {
        for (name, value) in [("mass", mass), ("d", d), ("d_prime", d_prime), ("G", g)] {
            if !(value > T::zero() && value.is_finite()) {
                return Err(Error::InvalidParameter {
                    name,
                    value: value.as_f64(),
                    reason: "must be positive and finite",
                });
            }
        }
        Ok(Self {
            mass,
            d,
            d_prime,
            g,
        })
    }
}

/// `Ω = (G m² / 2)(1/d − 1/d′)`
pub fn omega_from_geometry<T: Real>(g: &GeometryParams<T>) -> Result<T> {
    if g.d > g.d_prime {
        return Err(Error::NegativeCoupling {
            d: g.d.as_f64(),
            d_prime: g.d_prime.as_f64(),
        });
    }
    let eta = g.g * g.mass * g.mass;
    Ok(eta / T::lit(2.0) * (g.d.recip() - g.d_prime.recip()))
}

/// How the populations of the thermal state are assigned to the eigenbasis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ThermalConvention {
    /// `p_n ∝ e^{−βε_n}`, the equilibrium state.
    Gibbs,
    /// `p_n ∝ e^{+βε_n}`.
    Inverted,
    /// Weights `e^{−βΩ}, e^{+βΔ}, e^{−βΔ}, e^{+βΩ}` on `|ε₁⟩..|ε₄⟩`: the
    /// Boltzmann factors of the Bell pair sit on the ee/gg states and vice
    /// versa.
    PaperLiteral,
}

impl ThermalConvention {
    pub const ALL: [ThermalConvention; 3] = [Self::Gibbs, Self::Inverted, Self::PaperLiteral];

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Gibbs => "GIBBS",
            Self::Inverted => "INVERTED",
            Self::PaperLiteral => "PAPER_LITERAL",
        }
    }
}

impl fmt::Display for ThermalConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownConvention(pub String);

impl fmt::Display for UnknownConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown convention `{}` (expected gibbs, inverted or paper_literal)",
            self.0
        )
    }
}

impl std::error::Error for UnknownConvention {}

impl FromStr for ThermalConvention {
    type Err = UnknownConvention;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "gibbs" => Ok(Self::Gibbs),
            "inverted" => Ok(Self::Inverted),
            "paper_literal" | "literal" => Ok(Self::PaperLiteral),
            _ => Err(UnknownConvention(s.to_string())),
        }
    }
}

/// Temperature (`k_B = 1`) and population convention.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThermalSpec<T> {
    temperature: T,
    convention: ThermalConvention,
}

impl<T: Real> ThermalSpec<T> {
    pub fn new(temperature: T, convention: ThermalConvention) -> Result<Self> {
        if !(temperature > T::zero() && temperature.is_finite() && temperature.recip().is_finite())
        {
            return Err(Error::InvalidParameter {
                name: "temperature",
                value: temperature.as_f64(),
                reason: "must be positive and finite",
            });
        }
        Ok(Self {
            temperature,
            convention,
        })
    }

    pub fn gibbs(temperature: T) -> Result<Self> {
        Self::new(temperature, ThermalConvention::Gibbs)
    }

    pub fn temperature(&self) -> T {
        self.temperature
    }

    pub fn convention(&self) -> ThermalConvention {
        self.convention
    }

    pub fn beta(&self) -> T {
        self.temperature.recip()
    }
}

/// `Z = 2 cosh(βΔ) + 2 cosh(βΩ)`, the same for every convention because the
/// spectrum is symmetric about zero.
pub fn partition_function<T: Real>(p: &ModelParams<T>, t: &ThermalSpec<T>) -> Result<T> {
    let beta = t.beta();
    let exponent = beta * p.delta();
    if exponent.is_nan() || exponent > T::lit(MAX_DIRECT_EXPONENT) {
        return Err(Error::PartitionOverflow {
            exponent: exponent.as_f64(),
        });
    }
    let two = T::lit(2.0);
    Ok(two * exponent.cosh() + two * (beta * p.coupling).cosh())
}

/// Unnormalized log-weights on `|ε₁⟩..|ε₄⟩`.
pub fn log_weights<T: Real>(p: &ModelParams<T>, t: &ThermalSpec<T>) -> [T; 4] {
    let beta = t.beta();
    let bd = beta * p.delta();
    let bo = beta * p.coupling;
    match t.convention {
        ThermalConvention::Gibbs => [bd, bo, -bo, -bd],
        ThermalConvention::Inverted => [-bd, -bo, bo, bd],
        ThermalConvention::PaperLiteral => [-bo, bd, -bd, bo],
    }
}

/// Normalized populations on `|ε₁⟩..|ε₄⟩`. The largest exponent is factored
/// out before exponentiating, so this stays finite far past the direct
/// partition function range.
pub fn thermal_populations<T: Real>(p: &ModelParams<T>, t: &ThermalSpec<T>) -> Result<[T; 4]> {
    let logs = log_weights(p, t);
    if logs.iter().any(|x| !x.is_finite()) {
        return Err(Error::PartitionOverflow {
            exponent: (t.beta() * p.delta()).as_f64(),
        });
    }
    let top = logs.iter().copied().fold(T::neg_infinity(), T::max);
    let weights = logs.map(|x| (x - top).exp());
    let total: T = weights.iter().copied().sum();
    Ok(weights.map(|w| w / total))
}

/// Thermal state by spectral synthesis over the analytic eigenbasis.
pub fn thermal_state<T: Real>(p: &ModelParams<T>, t: &ThermalSpec<T>) -> Result<DensityMatrix<T>> {
    let pops = thermal_populations(p, t)?;
    let basis = analytic_spectrum(p).decomposition();
    Ok(DensityMatrix::new_unchecked(basis.synthesize(&pops)))
}

/// Equilibrium matrix elements written out in closed form, with each
/// Boltzmann factor attached to the block its eigenvector lives in.
/// Evaluated directly, so it shares the partition function's overflow limit.
pub fn closed_form_gibbs_elements<T: Real>(
    p: &ModelParams<T>,
    t: &ThermalSpec<T>,
) -> Result<DensityMatrix<T>> {
    let z = partition_function(p, t)?;
    let s = analytic_spectrum(p);
    let beta = t.beta();
    let [e1, e2, e3, e4] = s.eigenvalues;
    let (w1, w2, w3, w4) = (
        (-beta * e1).exp(),
        (-beta * e2).exp(),
        (-beta * e3).exp(),
        (-beta * e4).exp(),
    );
    let (sp, cp) = s.phi_plus.sin_cos();
    let (sm, cm) = s.phi_minus.sin_cos();
    let two = T::lit(2.0);

    let r11 = (w1 * sp * sp + w4 * sm * sm) / z;
    let r14 = (w1 * (two * s.phi_plus).sin() + w4 * (two * s.phi_minus).sin()) / (two * z);
    let r22 = (w2 + w3) / (two * z);
    let r23 = (w2 - w3) / (two * z);
    let r44 = (w1 * cp * cp + w4 * cm * cm) / z;

    Ok(DensityMatrix::new_unchecked(x_state(
        r11, r14, r22, r23, r44,
    )))
}

/// `[[a, 0, 0, b], [0, c, d, 0], [0, d, c, 0], [b, 0, 0, e]]`
pub(crate) fn x_state<T: Real>(r11: T, r14: T, r22: T, r23: T, r44: T) -> ComplexMatrix4<T> {
    let o = T::zero();
    let rows = [
        [r11, o, o, r14],
        [o, r22, r23, o],
        [o, r23, r22, o],
        [r14, o, o, r44],
    ];
    ComplexMatrix4::from_fn(|i, j| Complex::new(rows[i][j], o))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::{expectation, hermitian_eig};
    use approx::assert_relative_eq;

    fn params(omega: f64, coupling: f64) -> ModelParams<f64> {
        ModelParams::new(omega, coupling).unwrap()
    }

    #[test]
    fn hamiltonian_entries() {
        let h = build_hamiltonian(&params(1.0, 0.5));
        let m = h.matrix();
        for i in 0..4 {
            for j in 0..4 {
                let want = match (i, j) {
                    (0, 0) => 1.0,
                    (3, 3) => -1.0,
                    (a, b) if a + b == 3 => -0.5,
                    _ => 0.0,
                };
                assert_eq!(m[(i, j)], cr(want), "({i},{j})");
            }
        }
        let h0 = build_hamiltonian(&params(1.0, 0.0));
        assert_eq!(
            h0.matrix(),
            &ComplexMatrix4::diagonal([1.0, 0.0, 0.0, -1.0])
        );
    }

    #[test]
    fn three_four_five_spectrum() {
        let p = params(4.0, 3.0);
        let s = analytic_spectrum(&p);
        assert_eq!(s.delta, 5.0);
        assert_eq!(s.eigenvalues, [-5.0, -3.0, 3.0, 5.0]);
        let num = hermitian_eig(&build_hamiltonian(&p)).unwrap();
        for (a, b) in num.eigenvalues().iter().zip(s.eigenvalues) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn decoupled_ground_state() {
        let s = analytic_spectrum(&params(1.0, 0.0));
        assert_eq!(s.phi_plus, 0.0);
        assert_eq!(s.eigenstates[0], [cr(0.0), cr(0.0), cr(0.0), cr(1.0)]);
        assert_relative_eq!(s.phi_minus, -std::f64::consts::FRAC_PI_2);
    }

    #[test]
    fn weak_coupling_top_state() {
        // φ₋ → −π/2 and |ε₄⟩ → −|ee⟩; compare the projector with the
        // numerical solver at Ω = 1e-6.
        let p = params(1.0, 1e-6);
        let s = analytic_spectrum(&p);
        assert!((s.phi_minus + std::f64::consts::FRAC_PI_2).abs() < 1e-6);
        assert!((s.eigenstates[3][0].re + 1.0).abs() < 1e-12);
        let num = hermitian_eig(&build_hamiltonian(&p)).unwrap();
        let proj_analytic = ComplexMatrix4::outer(&s.eigenstates[3], &s.eigenstates[3]);
        assert!(num.projector(3).max_abs_diff(&proj_analytic) < 1e-10);
    }

    #[test]
    fn eigenstate_equations_hold() {
        let p = params(0.7, 2.3);
        let h = build_hamiltonian(&p);
        let s = analytic_spectrum(&p);
        for (v, e) in s.eigenstates.iter().zip(s.eigenvalues) {
            let hv = h.matrix().apply(v);
            let res: f64 = hv.iter().zip(v).map(|(a, b)| (a - b * e).norm_sqr()).sum();
            assert!(res.sqrt() < 1e-12);
        }
        let ground = DensityMatrix::pure(&s.eigenstates[0]).unwrap();
        assert_relative_eq!(expectation(&h, &ground), -s.delta, epsilon = 1e-12);
    }

    #[test]
    fn ground_energy_at_half_coupling() {
        let p = params(1.0, 0.5);
        let s = analytic_spectrum(&p);
        let rho = DensityMatrix::pure(&s.eigenstates[0]).unwrap();
        let e = expectation(&build_hamiltonian(&p), &rho);
        assert_relative_eq!(e, -(1.25f64).sqrt(), epsilon = 1e-12);
        assert_relative_eq!(e, -1.118034, epsilon = 1e-6);
    }

    #[test]
    fn invalid_model_params() {
        assert!(ModelParams::new(0.0, 1.0).is_err());
        assert!(ModelParams::new(1.0, -0.1).is_err());
        assert!(ModelParams::new(f64::NAN, 0.1).is_err());
        assert!(ThermalSpec::gibbs(0.0).is_err());
        assert!(ThermalSpec::gibbs(f64::INFINITY).is_err());
        assert!(ThermalSpec::gibbs(1e-320).is_err());
    }

    #[test]
    fn geometry() {
        let g = GeometryParams::new(1.0, 1.0, 1.0).unwrap();
        assert_eq!(omega_from_geometry(&g).unwrap(), 0.0);

        let g = GeometryParams::with_constant(1.0, 1.0, 2.0, 6.674e-11).unwrap();
        assert_relative_eq!(
            omega_from_geometry(&g).unwrap(),
            1.6685e-11,
            max_relative = 1e-12
        );

        let g = GeometryParams::new(2.0, 0.5, 0.5e12).unwrap();
        let limit = GRAVITATIONAL_CONSTANT * 4.0 / (2.0 * 0.5);
        assert_relative_eq!(omega_from_geometry(&g).unwrap(), limit, max_relative = 1e-9);

        let g = GeometryParams::new(1.0, 2.0, 1.0).unwrap();
        assert_eq!(
            omega_from_geometry(&g),
            Err(Error::NegativeCoupling {
                d: 2.0,
                d_prime: 1.0
            })
        );
        assert!(GeometryParams::new(1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn partition_function_values() {
        let z = partition_function(&params(1.0, 0.0), &ThermalSpec::gibbs(1.0).unwrap()).unwrap();
        assert_relative_eq!(z, 5.0861612696, epsilon = 1e-10);

        let p = params(4.0, 3.0);
        let t = ThermalSpec::gibbs(10.0).unwrap();
        let z = partition_function(&p, &t).unwrap();
        // 2 cosh(0.5) + 2 cosh(0.3)
        assert_relative_eq!(z, 4.345928958670482, epsilon = 1e-12);
        // trace of exp(−βH) through the spectral route
        let num = hermitian_eig(&build_hamiltonian(&p)).unwrap();
        let e = num.spectral_function(|x| (-x / 10.0).exp()).unwrap();
        assert_relative_eq!(e.matrix().trace().re, z, epsilon = 1e-12);

        for conv in ThermalConvention::ALL {
            let t = ThermalSpec::new(1e15, conv).unwrap();
            assert_relative_eq!(partition_function(&p, &t).unwrap(), 4.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn partition_function_overflow_guard() {
        let t = ThermalSpec::gibbs(1e-3).unwrap();
        assert!(matches!(
            partition_function(&params(1.0, 0.0), &t),
            Err(Error::PartitionOverflow { .. })
        ));
        // the stabilized population path still works there
        let pops = thermal_populations(&params(1.0, 0.0), &t).unwrap();
        assert_eq!(pops[0], 1.0);
        let rho = thermal_state(&params(4.0, 4.0), &ThermalSpec::gibbs(1e-4).unwrap()).unwrap();
        assert!(rho.matrix().is_finite());
    }

    #[test]
    fn gibbs_decoupled_state() {
        let p = params(1.0, 0.0);
        let rho = thermal_state(&p, &ThermalSpec::gibbs(1.0).unwrap()).unwrap();
        let e = std::f64::consts::E;
        let z = 2.0 + 2.0 * 1f64.cosh();
        let want = ComplexMatrix4::diagonal([1.0 / e, 1.0, 1.0, e]).scale_real(1.0 / z);
        assert!(rho.matrix().max_abs_diff(&want) < 1e-15);

        let cf = closed_form_gibbs_elements(&p, &ThermalSpec::gibbs(1.0).unwrap()).unwrap();
        assert_relative_eq!(cf.matrix()[(1, 1)].re, 1.0 / z, epsilon = 1e-15);
    }

    #[test]
    fn infinite_temperature_is_maximally_mixed() {
        let p = params(1.0, 0.5);
        for conv in ThermalConvention::ALL {
            let t = ThermalSpec::new(1e12, conv).unwrap();
            let rho = thermal_state(&p, &t).unwrap();
            let mixed = DensityMatrix::<f64>::maximally_mixed();
            assert!(rho.matrix().max_abs_diff(mixed.matrix()) < 1e-9);
        }
        let cf = closed_form_gibbs_elements(&p, &ThermalSpec::gibbs(1e300).unwrap()).unwrap();
        assert!(
            cf.matrix()
                .max_abs_diff(DensityMatrix::<f64>::maximally_mixed().matrix())
                < 1e-15
        );
    }

    #[test]
    fn paper_literal_low_temperature_state() {
        let p = params(1.0, 0.5);
        let s = analytic_spectrum(&p);
        let target = ComplexMatrix4::outer(&s.eigenstates[1], &s.eigenstates[1]);

        // The runner-up weight e^{βΩ} leaves e^{−β(Δ−Ω)} ≈ 4.3e-6 on |ε₄⟩ at
        // T = 0.05, so the deviation sits just below 5e-6.
        let t = ThermalSpec::new(0.05, ThermalConvention::PaperLiteral).unwrap();
        let dev = thermal_state(&p, &t)
            .unwrap()
            .matrix()
            .max_abs_diff(&target);
        let leak = (-(s.delta - 0.5) / 0.05).exp();
        assert!(dev < 5e-6 && dev > 0.9 * leak * s.phi_minus.sin().powi(2));

        let t = ThermalSpec::new(0.02, ThermalConvention::PaperLiteral).unwrap();
        let dev = thermal_state(&p, &t)
            .unwrap()
            .matrix()
            .max_abs_diff(&target);
        assert!(dev < 1e-6);
    }

    #[test]
    fn inverted_is_gibbs_of_negated_spectrum() {
        let p = params(1.3, 0.8);
        let t = ThermalSpec::new(0.7, ThermalConvention::Inverted).unwrap();
        let pops = thermal_populations(&p, &t).unwrap();
        let s = analytic_spectrum(&p);
        let w = s.eigenvalues.map(|e| (e / 0.7).exp());
        let z: f64 = w.iter().sum();
        for (a, b) in pops.iter().zip(w) {
            assert!((a - b / z).abs() < 1e-12);
        }
    }

    #[test]
    fn single_precision_model() {
        let p = ModelParams::<f32>::new(4.0, 3.0).unwrap();
        let rho = thermal_state(&p, &ThermalSpec::gibbs(1.0f32).unwrap()).unwrap();
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-5);
        let num = hermitian_eig(&build_hamiltonian(&p)).unwrap();
        assert!((num.eigenvalues()[0] + 5.0).abs() < 1e-4);
    }
}
