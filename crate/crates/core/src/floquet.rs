//! One-period propagation, quasienergies and Floquet modes.
//!
//! The propagator is integrated with the fourth-order commutator-free Magnus
//! scheme (two exponentials per step at the Gauss points). Each factor is an
//! exact 2×2 exponential, so every stored U(t_j, 0) is unitary to rounding.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{self, hamiltonian_at, inner, Ket, SpinOperator, SystemParams};

/// Default number of time steps per drive period.
pub const DEFAULT_STEPS: usize = 2048;
/// Smallest accepted grid.
pub const MIN_STEPS: usize = 64;
/// Relative (to Ω) quasienergy separation below which two levels count as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-9;
/// Unitarity tolerance enforced on propagators handed to the diagonalizer.
pub const UNITARITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct PropagatorGrid {
    pub n_steps: usize,
    pub period: f64,
    /// t_j = jτ/N for j = 0..=N
    pub times: Vec<f64>,
    /// U(t_j, 0) for j = 0..=N
    pub propagators: Vec<SpinOperator>,
}

impl PropagatorGrid {
    pub fn monodromy(&self) -> &SpinOperator {
        &self.propagators[self.n_steps]
    }
}

#[derive(Debug, Clone)]
pub struct FloquetSolution {
    pub omega: f64,
    pub period: f64,
    pub n_steps: usize,
    pub times: Vec<f64>,
    /// ε_0 ≤ ε_1 in (−Ω/2, Ω/2]; equal up to the tolerance when degenerate.
    pub quasienergies: [f64; 2],
    /// modes[j][λ] = |φ_λ(t_j)⟩ for j = 0..=N
    pub modes: Vec<[Ket; 2]>,
    /// Δ = ε_1 − ε_0
    pub gap: f64,
    pub degenerate: bool,
}

impl FloquetSolution {
    pub fn mode(&self, lambda: usize, j: usize) -> &Ket {
        &self.modes[j][lambda]
    }

    pub fn stroboscopic_states(&self) -> [Ket; 2] {
        self.modes[0]
    }

    fn same_grid(&self, other: &FloquetSolution) -> bool {
        self.n_steps == other.n_steps && self.omega == other.omega
    }

    fn swap_labels(&mut self) {
        self.quasienergies.swap(0, 1);
        for m in &mut self.modes {
            m.swap(0, 1);
        }
        self.gap = self.quasienergies[1] - self.quasienergies[0];
    }
}

/// Integrate U(t_j, 0) over one drive period on a uniform grid of `n_steps` intervals.
pub fn propagate_period(params: &SystemParams, n_steps: usize) -> Result<PropagatorGrid> {
    if n_steps < MIN_STEPS || !n_steps.is_multiple_of(2) {
        return Err(Error::Configuration(format!(
            "n_steps must be even and at least {MIN_STEPS}, got {n_steps}"
        )));
    }
    if !(params.omega.is_finite() && params.omega > 0.0) {
        return Err(Error::InvalidParameter {
            name: "omega",
            value: params.omega,
            reason: "drive frequency must be positive",
        });
    }

    let period = params.period();
    let dt = period / n_steps as f64;
    let sqrt3_6 = 3f64.sqrt() / 6.0;
    let (c1, c2) = (0.5 - sqrt3_6, 0.5 + sqrt3_6);
    let (a1, a2) = (0.25 + sqrt3_6, 0.25 - sqrt3_6);

    let times: Vec<f64> = (0..=n_steps).map(|j| period * j as f64 / n_steps as f64).collect();
    let mut propagators = Vec::with_capacity(n_steps + 1);
    let mut u = SpinOperator::identity();
    propagators.push(u);

    for (j, &t) in times[..n_steps].iter().enumerate() {
        let h1 = hamiltonian_at(params, t + c1 * dt);
        let h2 = hamiltonian_at(params, t + c2 * dt);
        let first = SpinOperator::exp_i_hermitian(
            &(h1.scale(a1.into()) + h2.scale(a2.into())),
            dt,
        );
        let second = SpinOperator::exp_i_hermitian(
            &(h1.scale(a2.into()) + h2.scale(a1.into())),
            dt,
        );
        u = second * (first * u);
        if !u.is_finite() {
            return Err(Error::IntegrationFailure { step: j });
        }
        propagators.push(u);
    }

    Ok(PropagatorGrid {
        n_steps,
        period,
        times,
        propagators,
    })
}

/// Fold a quasienergy into the first Brillouin zone (−Ω/2, Ω/2].
pub fn fold_quasienergy(eps: f64, omega: f64) -> f64 {
    let mut e = eps - omega * (eps / omega).round();
    if e <= -0.5 * omega {
        e += omega;
    }
    if e > 0.5 * omega {
        e -= omega;
    }
    e
}

/// Unit eigenvector of n·σ with eigenvalue +1 for a real unit vector n.
fn pauli_axis_eigenvector(n: [f64; 3]) -> Ket {
    let [nx, ny, nz] = n;
    let (a, b) = if nz >= 0.0 {
        (Complex64::new(1.0 + nz, 0.0), Complex64::new(nx, ny))
    } else {
        (Complex64::new(nx, -ny), Complex64::new(1.0 - nz, 0.0))
    };
    let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
    [a / norm, b / norm]
}

/// The state orthogonal to `v` (same norm).
fn orthogonal_complement(v: &Ket) -> Ket {
    [-v[1].conj(), v[0].conj()]
}

/// Fix the global phase of a mode so its overlap with the nearer σ_x
/// eigenvector is real and positive.
pub(crate) fn align_phase(v: Ket) -> Ket {
    let (minus, plus) = model::sigma_x_eigenbasis();
    let om = inner(&minus, &v);
    let op = inner(&plus, &v);
    let ov = if om.norm() >= op.norm() { om } else { op };
    if ov.norm() == 0.0 {
        return v;
    }
    let phase = ov.conj() / ov.norm();
    [v[0] * phase, v[1] * phase]
}

/// Quasienergies and Floquet modes from the one-period propagator.
pub fn diagonalize_monodromy(grid: &PropagatorGrid, omega: f64) -> Result<FloquetSolution> {
    let n = grid.n_steps;
    if grid.propagators.len() != n + 1 || grid.times.len() != n + 1 {
        return Err(Error::InvariantViolation(
            "propagator grid has inconsistent length".into(),
        ));
    }
    for (j, u) in grid.propagators.iter().enumerate() {
        let err = u.unitarity_error();
        if !(err <= UNITARITY_TOL) {
            return Err(Error::InvariantViolation(format!(
                "U(t_{j}, 0) not unitary: ‖U†U − I‖ = {err:e}"
            )));
        }
    }

    let tau = grid.period;
    let u = grid.monodromy();
    // U = e^{iχ} (cos a − i sin a n·σ)
    let chi = 0.5 * u.det().arg();
    let v = u.scale(Complex64::from_polar(1.0, -chi));
    let [c0, cx, cy, cz] = v.pauli_components();
    // −i sin(a) n_k = c_k
    let m = [-cx.im, -cy.im, -cz.im];
    let m_norm = (m[0] * m[0] + m[1] * m[1] + m[2] * m[2]).sqrt();
    let a = m_norm.atan2(c0.re);

    // n·σ = +1 ↔ eigenvalue e^{−i(a − χ)}, n·σ = −1 ↔ e^{+i(a + χ)}
    let eps_plus = fold_quasienergy((a - chi) / tau, omega);
    let eps_minus = fold_quasienergy((-a - chi) / tau, omega);

    let raw_gap = (eps_plus - eps_minus).abs();
    let separation = raw_gap.min((omega - raw_gap).abs());
    let degenerate = separation < DEGENERACY_TOL * omega || m_norm == 0.0;

    let (eps, states) = if degenerate {
        // Degenerate: choose the σ_x eigenbasis (the h_z0 → 0 convention).
        let (minus, plus) = model::sigma_x_eigenbasis();
        let e = if raw_gap > 0.5 * omega {
            0.5 * omega
        } else {
            0.5 * (eps_plus + eps_minus)
        };
        ([e, e], [minus, plus])
    } else {
        let axis = [m[0] / m_norm, m[1] / m_norm, m[2] / m_norm];
        let up = pauli_axis_eigenvector(axis);
        let down = orthogonal_complement(&up);
        if eps_minus <= eps_plus {
            ([eps_minus, eps_plus], [down, up])
        } else {
            ([eps_plus, eps_minus], [up, down])
        }
    };
    let states = [align_phase(states[0]), align_phase(states[1])];

    let modes = grid
        .propagators
        .iter()
        .zip(&grid.times)
        .map(|(u, &t)| {
            let mut pair = [[Complex64::new(0.0, 0.0); 2]; 2];
            for lambda in 0..2 {
                let phase = Complex64::from_polar(1.0, eps[lambda] * t);
                let w = u.apply(&states[lambda]);
                pair[lambda] = [w[0] * phase, w[1] * phase];
            }
            pair
        })
        .collect();

    Ok(FloquetSolution {
        omega,
        period: tau,
        n_steps: n,
        times: grid.times.clone(),
        quasienergies: eps,
        modes,
        gap: eps[1] - eps[0],
        degenerate,
    })
}

/// Convenience: propagate and diagonalize in one call.
pub fn solve(params: &SystemParams, n_steps: usize) -> Result<FloquetSolution> {
    let grid = propagate_period(params, n_steps)?;
    diagonalize_monodromy(&grid, params.omega)
}

#[derive(Debug, Clone)]
pub struct LabelContinuation {
    pub solution: FloquetSolution,
    /// Overlap tracking preferred exchanging the two labels.
    pub swapped: bool,
}

/// Carry labels from a neighbouring sweep point.
///
/// Overlap tracking of the stroboscopic states detects whether the levels
/// exchanged character. Outside degeneracies the labels stay ordered by
/// quasienergy; inside the degeneracy window the tracked assignment is kept.
pub fn continue_labels(
    previous: &FloquetSolution,
    current: FloquetSolution,
) -> Result<LabelContinuation> {
    if !previous.same_grid(&current) {
        return Err(Error::Configuration(format!(
            "label continuation needs identical grids (N = {} vs {}, Ω = {} vs {})",
            previous.n_steps, current.n_steps, previous.omega, current.omega
        )));
    }
    let p = previous.stroboscopic_states();
    let c = current.stroboscopic_states();
    let keep = inner(&p[0], &c[0]).norm_sqr() + inner(&p[1], &c[1]).norm_sqr();
    let exchange = inner(&p[0], &c[1]).norm_sqr() + inner(&p[1], &c[0]).norm_sqr();
    let swapped = exchange > keep;

    let mut solution = current;
    if solution.degenerate && swapped {
        solution.swap_labels();
    }
    Ok(LabelContinuation { solution, swapped })
}

/// exp(−i (σ_x/2) t): closed-form static propagator used in tests.
pub fn static_sigma_x_propagator(h_x: f64, t: f64) -> SpinOperator {
    let phi = 0.5 * h_x * t;
    SpinOperator::identity().scale(phi.cos().into())
        + SpinOperator::sigma_x().scale(Complex64::new(0.0, -phi.sin()))
}

/// exp(−i (σ_z/2)(h_z1/Ω) sin Ωt): exact propagator for h_x = h_z0 = 0.
pub fn pure_drive_propagator(h_z1: f64, omega: f64, t: f64) -> SpinOperator {
    let phi = 0.5 * h_z1 / omega * (omega * t).sin();
    SpinOperator::identity().scale(phi.cos().into())
        + SpinOperator::sigma_z().scale(Complex64::new(0.0, -phi.sin()))
}
