//! Stationary Floquet-state populations, the periodic density matrix and the
//! Mollow-triplet emission intensities.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::floquet::FloquetSolution;
use crate::model::{Ket, SpinOperator};
use crate::rates::TransitionTable;

/// Relaxation below this fraction of the total rate (dephasing included) is
/// roundoff in squared matrix elements, not a physical channel.
pub const RELAXATION_TOL: f64 = 1e-24;

#[derive(Debug, Clone)]
pub struct StationaryState {
    /// p_0 + p_1 = 1 by construction.
    pub populations: [f64; 2],
    /// ρ_s(t_j) on the Floquet grid, j = 0..=N; empty until reconstructed.
    pub density_matrix: Vec<SpinOperator>,
    pub gamma_used: f64,
    /// totals[λ][μ] = W_{λ←μ}
    pub totals: [[f64; 2]; 2],
}

impl StationaryState {
    /// Relaxation rate W_{0←1} + W_{1←0}.
    pub fn relaxation_rate(&self) -> f64 {
        self.totals[0][1] + self.totals[1][0]
    }

    /// p(t) = p_∞ + (p(0) − p_∞) e^{−(W_{0←1}+W_{1←0}) t}, given p_0(0).
    pub fn relax(&self, p0_initial: f64, t: f64) -> [f64; 2] {
        let p0 = self.populations[0]
            + (p0_initial - self.populations[0]) * (-self.relaxation_rate() * t).exp();
        [p0, 1.0 - p0]
    }

    /// |dp_0/dt| evaluated at the stored populations.
    pub fn stationarity_residual(&self) -> f64 {
        let [p0, p1] = self.populations;
        (-self.totals[1][0] * p0 + self.totals[0][1] * p1).abs()
    }
}

/// Unique fixed point of the two-state rate equations.
pub fn solve_stationary(table: &TransitionTable) -> Result<StationaryState> {
    let into_0 = table.total(0, 1);
    let into_1 = table.total(1, 0);
    let sum = into_0 + into_1;
    let mut scale = 0.0;
    for n in table.orders() {
        for l in 0..2 {
            for m in 0..2 {
                scale += table.rate(l, m, n);
            }
        }
    }
    if !(sum > RELAXATION_TOL * scale) {
        return Err(Error::NoRelaxation);
    }
    let p0 = into_0 / sum;
    Ok(StationaryState {
        populations: [p0, 1.0 - p0],
        density_matrix: Vec::new(),
        gamma_used: table.bath.gamma,
        totals: table.totals,
    })
}

fn projector(v: &Ket) -> SpinOperator {
    let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (r, row) in m.iter_mut().enumerate() {
        for (c, entry) in row.iter_mut().enumerate() {
            *entry = v[r] * v[c].conj();
        }
    }
    SpinOperator(m)
}

/// ρ_s(t_j) = Σ_λ p_λ |φ_λ(t_j)⟩⟨φ_λ(t_j)|
pub fn density_matrix(mut state: StationaryState, solution: &FloquetSolution) -> StationaryState {
    let [p0, p1] = state.populations;
    state.density_matrix = solution
        .modes
        .iter()
        .map(|[phi0, phi1]| {
            projector(phi0).scale(p0.into()) + projector(phi1).scale(p1.into())
        })
        .collect();
    state
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmissionReport {
    /// I_b = (Ω + Δ) A^{(−1)}_{0←1} p_1
    pub intensity_blue: f64,
    /// I_r = (Ω − Δ) A^{(−1)}_{1←0} p_0
    pub intensity_red: f64,
    /// Extension: Ω (A^{(−1)}_{0←0} p_0 + A^{(−1)}_{1←1} p_1), the diagonal-channel analogue.
    pub intensity_unshifted: f64,
    /// Δ = ε_1 − ε_0
    pub splitting: f64,
    /// I_r/I_b, `None` when I_b = 0.
    pub ratio: Option<f64>,
}

pub fn emission(
    state: &StationaryState,
    table: &TransitionTable,
    solution: &FloquetSolution,
) -> EmissionReport {
    let omega = table.omega();
    let delta = solution.gap;
    let [p0, p1] = state.populations;
    let blue = (omega + delta) * table.rate(0, 1, -1) * p1;
    let red = (omega - delta) * table.rate(1, 0, -1) * p0;
    let unshifted = omega * (table.rate(0, 0, -1) * p0 + table.rate(1, 1, -1) * p1);
    EmissionReport {
        intensity_blue: blue,
        intensity_red: red,
        intensity_unshifted: unshifted,
        splitting: delta,
        ratio: (blue > 0.0).then(|| red / blue),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::floquet;
    use crate::model::{BathParams, SystemParams};
    use crate::rates::{fourier_coefficients, rates};
    use std::f64::consts::PI;

    fn table_for(p: &SystemParams, bath: &BathParams, n: usize) -> (FloquetSolution, TransitionTable) {
        let sol = floquet::solve(p, n).unwrap();
        let c = fourier_coefficients(&sol, p.theta, 3).unwrap();
        let t = rates(&c, bath, &sol).unwrap();
        (sol, t)
    }

    fn with_totals(mut t: TransitionTable, w01: f64, w10: f64) -> TransitionTable {
        t.totals = [[0.0, w01], [w10, 0.0]];
        t
    }

    #[test]
    fn symmetric_totals_give_equal_populations() {
        let p = SystemParams::new(1.0, 0.0, 0.0, 40.0, PI / 4.0).unwrap();
        let (_, t) = table_for(&p, &BathParams::default(), 64);
        let s = solve_stationary(&with_totals(t, 0.3, 0.3)).unwrap();
        assert_eq!(s.populations, [0.5, 0.5]);
    }

    #[test]
    fn undriven_transverse_coupling_cannot_relax() {
        // σ_x commutes with the static Hamiltonian: only roundoff connects the states
        let p = SystemParams::new(1.0, 0.0, 0.0, 40.0, PI / 2.0).unwrap();
        let (_, t) = table_for(&p, &BathParams::default(), 256);
        assert_eq!(solve_stationary(&t).unwrap_err(), Error::NoRelaxation);
    }

    #[test]
    fn zero_totals_is_no_relaxation() {
        let p = SystemParams::new(1.0, 0.0, 0.0, 40.0, PI / 4.0).unwrap();
        let (_, t) = table_for(&p, &BathParams::default(), 64);
        assert_eq!(
            solve_stationary(&with_totals(t, 0.0, 0.0)).unwrap_err(),
            Error::NoRelaxation
        );
    }

    #[test]
    fn static_gibbs_ratio() {
        let p = SystemParams::new(1.0, 0.0, 0.0, 40.0, PI / 4.0).unwrap();
        let (_, t) = table_for(&p, &BathParams::default(), 256);
        let s = solve_stationary(&t).unwrap();
        let r = s.populations[1] / s.populations[0];
        assert!((r - (-1.0f64 / 3.0).exp()).abs() < 1e-12);
        assert!(s.stationarity_residual() <= 1e-12 * t.total(0, 1).max(t.total(1, 0)));
    }

    #[test]
    fn pure_and_maximally_mixed_density_matrices() {
        let p = SystemParams::new(1.0, 0.0, 60.0, 40.0, PI / 2.0).unwrap();
        let (sol, t) = table_for(&p, &BathParams::default(), 256);
        let mut s = solve_stationary(&t).unwrap();

        s.populations = [1.0, 0.0];
        let pure = density_matrix(s.clone(), &sol);
        for rho in &pure.density_matrix {
            let purity = (*rho * *rho).trace().re;
            assert!((purity - 1.0).abs() < 1e-10);
        }

        s.populations = [0.5, 0.5];
        let mixed = density_matrix(s, &sol);
        let half = SpinOperator::identity().scale(0.5.into());
        for rho in &mixed.density_matrix {
            assert!(rho.max_abs_diff(&half) < 1e-10);
        }
    }

    #[test]
    fn static_limit_has_no_sidebands() {
        let p = SystemParams::new(1.0, 0.0, 0.0, 40.0, PI / 3.0).unwrap();
        let (sol, t) = table_for(&p, &BathParams::default(), 256);
        let s = solve_stationary(&t).unwrap();
        let e = emission(&s, &t, &sol);
        assert!(e.intensity_blue < 1e-25);
        assert!(e.intensity_red < 1e-25);
    }

    #[test]
    fn emission_formulas_hold_by_construction() {
        let p = SystemParams::new(1.0, 0.0, 40.0, 40.0, PI / 4.0).unwrap();
        let (sol, t) = table_for(&p, &BathParams::default(), 256);
        let s = solve_stationary(&t).unwrap();
        let e = emission(&s, &t, &sol);
        let d = sol.quasienergies[1] - sol.quasienergies[0];
        assert_eq!(e.intensity_blue, (40.0 + d) * t.rate(0, 1, -1) * s.populations[1]);
        assert_eq!(e.intensity_red, (40.0 - d) * t.rate(1, 0, -1) * s.populations[0]);
        assert_eq!(e.ratio, Some(e.intensity_red / e.intensity_blue));
    }

    #[test]
    fn relaxation_approaches_stationary_state() {
        let p = SystemParams::new(1.0, 0.0, 40.0, 40.0, PI / 4.0).unwrap();
        let (_, t) = table_for(&p, &BathParams::default(), 256);
        let s = solve_stationary(&t).unwrap();
        assert_eq!(s.relax(0.9, 0.0)[0], 0.9);
        let late = s.relax(0.9, 1e4 / s.relaxation_rate());
        assert!((late[0] - s.populations[0]).abs() < 1e-12);
    }
}
