//! Model checks over the (ω, Ω) grid used throughout the test suite.

use gravcat_core::gravcat::{log_weights, ThermalSpec};
use gravcat_core::{
    analytic_spectrum, build_hamiltonian, closed_form_gibbs_elements, ergotropy_trace,
    hermitian_eig, thermal_state, DensityMatrix, ModelParams, ThermalConvention,
};

fn grid() -> impl Iterator<Item = ModelParams> {
    (0..20).flat_map(|i| {
        (0..20).map(move |j| {
            let omega = 0.1 + 3.9 * i as f64 / 19.0;
            let coupling = 4.0 * j as f64 / 19.0;
            ModelParams::new(omega, coupling).unwrap()
        })
    })
}

#[test]
fn analytic_and_numeric_spectra_agree() {
    for p in grid() {
        let h = build_hamiltonian(&p);
        let s = analytic_spectrum(&p);
        let num = hermitian_eig(&h).unwrap();
        for (a, b) in s.eigenvalues.iter().zip(num.eigenvalues()) {
            assert!((a - b).abs() < 1e-10, "{p:?}");
        }
        for (v, e) in s.eigenstates.iter().zip(s.eigenvalues) {
            let hv = h.matrix().apply(v);
            let r: f64 = hv.iter().zip(v).map(|(a, b)| (a - b * e).norm_sqr()).sum();
            assert!(r.sqrt() < 1e-10);
        }
        assert!(((s.delta * s.delta) - (p.omega().powi(2) + p.coupling().powi(2))).abs() < 1e-12);
    }
}

#[test]
fn thermal_states_are_valid_x_states() {
    let temps = [1e-2, 0.1, 1.0, 10.0, 1e3];
    for p in grid() {
        for conv in ThermalConvention::ALL {
            for t in temps {
                let rho = thermal_state(&p, &ThermalSpec::new(t, conv).unwrap()).unwrap();
                let m = rho.matrix();
                // full validation: Hermitian, unit trace, PSD
                DensityMatrix::new(*m).unwrap();
                for (i, j) in [(0, 1), (0, 2), (1, 3), (2, 3)] {
                    assert!(m[(i, j)].norm() < 1e-14 && m[(j, i)].norm() < 1e-14);
                }
            }
        }
    }
}

#[test]
fn closed_form_matches_spectral_synthesis() {
    for p in grid() {
        for t in [0.1, 1.0, 10.0] {
            let spec = ThermalSpec::gibbs(t).unwrap();
            let a = thermal_state(&p, &spec).unwrap();
            let b = closed_form_gibbs_elements(&p, &spec).unwrap();
            assert!(a.matrix().max_abs_diff(b.matrix()) < 1e-12, "{p:?} T={t}");
        }
    }
}

#[test]
fn inverted_populations_are_negated_gibbs() {
    for p in grid().step_by(7) {
        for t in [0.1, 1.0, 10.0] {
            let inv = log_weights(
                &p,
                &ThermalSpec::new(t, ThermalConvention::Inverted).unwrap(),
            );
            let gib = log_weights(&p, &ThermalSpec::gibbs(t).unwrap());
            let negated: Vec<f64> = analytic_spectrum(&p)
                .eigenvalues
                .iter()
                .map(|e| e / t)
                .collect();
            for k in 0..4 {
                assert_eq!(inv[k], -gib[k]);
                assert!((inv[k] - negated[k]).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn gibbs_is_passive_on_grid() {
    for p in grid() {
        let h = build_hamiltonian(&p);
        for t in [0.1, 1.0, 10.0] {
            let rho = thermal_state(&p, &ThermalSpec::gibbs(t).unwrap()).unwrap();
            let w = ergotropy_trace(&rho, &h).unwrap().ergotropy;
            assert!((-1e-10..=1e-10).contains(&w), "{p:?} T={t}: {w}");
        }
    }
}
