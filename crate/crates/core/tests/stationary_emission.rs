use std::f64::consts::PI;

use floquet_cdt::analytic::bessel_root;
use floquet_cdt::floquet::{self, FloquetSolution};
use floquet_cdt::model::{BathParams, SystemParams};
use floquet_cdt::rates::{fourier_coefficients, rates, TransitionTable};
use floquet_cdt::stationary::{density_matrix, emission, solve_stationary, StationaryState};

fn point(z: f64, omega: f64, theta: f64) -> (FloquetSolution, TransitionTable, StationaryState) {
    let p = SystemParams::new(1.0, 0.0, z * omega, omega, theta).unwrap();
    let sol = floquet::solve(&p, 2048).unwrap();
    let table = rates(&fourier_coefficients(&sol, theta, 3).unwrap(), &BathParams::default(), &sol).unwrap();
    let state = solve_stationary(&table).unwrap();
    (sol, table, state)
}

#[test]
fn inversion_at_moderate_drive() {
    let (_, _, s) = point(1.0, 40.0, PI / 2.0);
    assert!(s.populations[1] > s.populations[0]);
}

#[test]
fn stationary_state_is_not_gibbs() {
    let (sol, _, s) = point(1.0, 40.0, PI / 2.0);
    let ratio = s.populations[0] / s.populations[1];
    assert!((ratio - (sol.gap / 3.0).exp()).abs() > 0.1, "{ratio}");
    assert!((ratio - (-sol.gap / 3.0).exp()).abs() > 0.1, "{ratio}");
}

#[test]
fn density_matrix_continuous_across_root() {
    let root = bessel_root(1);
    let (sl, _, l) = point(root - 0.01, 40.0, PI / 2.0);
    let (sr, _, r) = point(root + 0.01, 40.0, PI / 2.0);
    // the populations swap with the labels
    assert!((r.populations[0] - l.populations[1]).abs() < 0.02);
    let rl = density_matrix(l, &sl);
    let rr = density_matrix(r, &sr);
    assert!(rl.density_matrix[0].max_abs_diff(&rr.density_matrix[0]) <= 0.02);
}

#[test]
fn density_matrix_is_a_state() {
    let (sol, _, s) = point(1.3, 40.0, 0.7);
    let rho = density_matrix(s, &sol);
    assert_eq!(rho.density_matrix.len(), sol.n_steps + 1);
    for m in &rho.density_matrix {
        assert!(m.hermiticity_error() <= 1e-12);
        assert!((m.trace().re - 1.0).abs() <= 1e-12);
        // 2×2: eigenvalues (1 ± √(1 − 4 det))/2 ≥ 0 ⇔ det ≥ 0
        assert!(m.det().re >= -1e-12);
    }
}

#[test]
fn sigma_z_coupling_emits_no_sidebands() {
    for z in [0.5, 1.5, 3.0] {
        let (sol, table, s) = point(z, 40.0, 0.0);
        let e = emission(&s, &table, &sol);
        assert!(e.intensity_blue < 1e-6 * 0.01 * 40.0);
        assert!(e.intensity_red < 1e-6 * 0.01 * 40.0);
    }
}

#[test]
fn static_limit_sidebands_vanish() {
    let (sol, table, s) = point(0.0, 40.0, PI / 4.0);
    let e = emission(&s, &table, &sol);
    // squared roundoff of the DFT times γΩ
    assert!(e.intensity_blue <= 1e-28 && e.intensity_red <= 1e-28, "{e:?}");
}

#[test]
fn ratio_approaches_one_at_high_frequency() {
    for z in [0.5, 1.0, 1.5] {
        let d: Vec<f64> = [40.0, 80.0, 160.0]
            .iter()
            .map(|&omega| {
                let (sol, table, s) = point(z, omega, PI / 2.0);
                (emission(&s, &table, &sol).ratio.unwrap() - 1.0).abs()
            })
            .collect();
        assert!(d[0] > d[1] && d[1] > d[2], "z = {z}: {d:?}");
    }
}

#[test]
fn intensities_are_non_negative_and_scale_with_gamma() {
    let p = SystemParams::new(1.0, 0.2, 70.0, 40.0, PI / 3.0).unwrap();
    let sol = floquet::solve(&p, 1024).unwrap();
    let c = fourier_coefficients(&sol, p.theta, 3).unwrap();
    let weak = BathParams::new(0.01, 10.0, 3.0).unwrap();
    let strong = BathParams::new(0.05, 10.0, 3.0).unwrap();
    let (tw, ts) = (rates(&c, &weak, &sol).unwrap(), rates(&c, &strong, &sol).unwrap());
    let (sw, ss) = (solve_stationary(&tw).unwrap(), solve_stationary(&ts).unwrap());
    assert!((sw.populations[0] - ss.populations[0]).abs() <= 1e-12);
    let (ew, es) = (emission(&sw, &tw, &sol), emission(&ss, &ts, &sol));
    for (a, b) in [
        (ew.intensity_blue, es.intensity_blue),
        (ew.intensity_red, es.intensity_red),
        (ew.intensity_unshifted, es.intensity_unshifted),
    ] {
        assert!(a >= 0.0);
        assert!((b / a - 5.0).abs() <= 1e-12);
    }
}
