use std::f64::consts::PI;

use proptest::prelude::*;

use floquet_cdt::floquet::{self, diagonalize_monodromy, propagate_period};
use floquet_cdt::model::{coupling_operator, inner, BathParams, SystemParams};
use floquet_cdt::rates::{fourier_coefficients, full_spectrum, matrix_element_series, rates};
use floquet_cdt::stationary::{density_matrix, emission, solve_stationary};

const STEPS: usize = 512;

fn system() -> impl Strategy<Value = SystemParams> {
    (-2.0..2.0f64, 0.05..6.0f64, 10.0..80.0f64, 0.0..PI / 2.0)
        .prop_map(|(h_z0, z, omega, theta)| SystemParams::new(1.0, h_z0, z * omega, omega, theta).unwrap())
}

fn bath() -> impl Strategy<Value = BathParams> {
    (0.001..0.1f64, 5.0..50.0f64, 0.5..10.0f64).prop_map(|(g, wc, t)| BathParams::new(g, wc, t).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn propagators_are_unitary(p in system()) {
        let grid = propagate_period(&p, STEPS).unwrap();
        for u in &grid.propagators {
            prop_assert!(u.unitarity_error() <= 1e-10);
        }
    }

    #[test]
    fn modes_are_orthonormal_and_periodic(p in system()) {
        let sol = floquet::solve(&p, STEPS).unwrap();
        for pair in &sol.modes {
            for l in 0..2 {
                for m in 0..2 {
                    let expected = if l == m { 1.0 } else { 0.0 };
                    prop_assert!((inner(&pair[l], &pair[m]).norm() - expected).abs() <= 1e-10);
                }
            }
        }
        for l in 0..2 {
            let (a, b) = (sol.modes[0][l], sol.modes[STEPS][l]);
            prop_assert!((a[0] - b[0]).norm().max((a[1] - b[1]).norm()) <= 1e-8);
        }
    }

    #[test]
    fn quasienergies_pair_up(p in system()) {
        let grid = propagate_period(&p, STEPS).unwrap();
        let sol = diagonalize_monodromy(&grid, p.omega).unwrap();
        let [e0, e1] = sol.quasienergies;
        prop_assert!(e0 <= e1 && e0 > -p.omega / 2.0 && e1 <= p.omega / 2.0);
        let sum = (e0 + e1).rem_euclid(p.omega);
        prop_assert!(sum.min(p.omega - sum) <= 1e-9 * p.omega);
    }

    #[test]
    fn coefficients_are_conjugate_symmetric_and_complete(p in system()) {
        let sol = floquet::solve(&p, STEPS).unwrap();
        let c = fourier_coefficients(&sol, p.theta, 3).unwrap();
        for n in c.orders() {
            prop_assert!((c.get(0, 1, n) - c.get(1, 0, -n).conj()).norm() <= 1e-14);
        }
        // σ_θ² = 1: the spectral weight out of each state sums to one
        let series = matrix_element_series(&sol, &coupling_operator(p.theta));
        for row in &series {
            let weight: f64 = row.iter().flat_map(|s| full_spectrum(s)).map(|a| a.norm_sqr()).sum();
            prop_assert!((weight - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn rates_obey_detailed_balance(p in system(), b in bath()) {
        let sol = floquet::solve(&p, STEPS).unwrap();
        let table = rates(&fourier_coefficients(&sol, p.theta, 3).unwrap(), &b, &sol).unwrap();
        prop_assert!(table.detailed_balance_residual() <= 1e-8);
        for n in table.orders() {
            for l in 0..2 {
                for m in 0..2 {
                    prop_assert!(table.rate(l, m, n) >= 0.0);
                }
            }
        }
    }

    #[test]
    fn stationary_state_is_physical(p in system(), b in bath()) {
        let sol = floquet::solve(&p, STEPS).unwrap();
        let table = rates(&fourier_coefficients(&sol, p.theta, 3).unwrap(), &b, &sol).unwrap();
        let state = solve_stationary(&table).unwrap();
        let [p0, p1] = state.populations;
        prop_assert!((0.0..=1.0).contains(&p0) && (0.0..=1.0).contains(&p1));
        prop_assert!(state.stationarity_residual() <= 1e-12 * state.relaxation_rate());
        let e = emission(&state, &table, &sol);
        prop_assert!(e.intensity_blue >= 0.0 && e.intensity_red >= 0.0 && e.intensity_unshifted >= 0.0);
        let rho = density_matrix(state, &sol);
        for m in &rho.density_matrix {
            prop_assert!(m.hermiticity_error() <= 1e-12);
            prop_assert!((m.trace().re - 1.0).abs() <= 1e-12);
            prop_assert!(m.det().re >= -1e-12);
        }
    }

    #[test]
    fn populations_do_not_depend_on_gamma(p in system(), b in bath(), k in 0.1..10.0f64) {
        let sol = floquet::solve(&p, STEPS).unwrap();
        let c = fourier_coefficients(&sol, p.theta, 3).unwrap();
        let scaled = BathParams { gamma: b.gamma * k, ..b };
        let s1 = solve_stationary(&rates(&c, &b, &sol).unwrap()).unwrap();
        let s2 = solve_stationary(&rates(&c, &scaled, &sol).unwrap()).unwrap();
        prop_assert!((s1.populations[0] - s2.populations[0]).abs() <= 1e-12);
    }
}
