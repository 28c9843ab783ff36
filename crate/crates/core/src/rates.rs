//! Bath spectral functions, Fourier transition coefficients and secular
//! Floquet-Redfield rates.
//!
//! A^{(n)}_{λ←μ} = Γ(Δ) [n_B(Δ) + 1] |a^{(n)}_{λ←μ}|²,  Δ = ε_μ − ε_λ − nΩ
//!
//! a^{(n)}_{λ←μ} is the n-th Fourier component of ⟨φ_λ(t)|σ_θ|φ_μ(t)⟩,
//! taken as a DFT over the same grid the modes were propagated on.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::floquet::FloquetSolution;
use crate::model::{coupling_operator, BathParams, SpinOperator};

/// Default Brillouin window half-width.
pub const DEFAULT_N_MAX: usize = 3;

/// Γ(ω) = γω/(ω² + ω_c²), odd in ω.
pub fn spectral_density(omega: f64, bath: &BathParams) -> f64 {
    bath.gamma * omega / (omega * omega + bath.omega_c * bath.omega_c)
}

/// n_B(ω) = 1/(e^{ω/T} − 1). Negative for ω < 0 (analytic continuation).
pub fn bose_occupation(omega: f64, temperature: f64) -> Result<f64> {
    if omega == 0.0 {
        return Err(Error::ZeroFrequency);
    }
    Ok(1.0 / (omega / temperature).exp_m1())
}

/// Γ(Δ)[n_B(Δ) + 1], continuous through Δ = 0 where it tends to γT/ω_c².
pub fn emission_prefactor(delta: f64, bath: &BathParams) -> f64 {
    let t = bath.temperature;
    if delta == 0.0 {
        return bath.gamma * t / (bath.omega_c * bath.omega_c);
    }
    let x = delta.abs();
    let n = 1.0 / (x / t).exp_m1();
    let g = spectral_density(x, bath);
    if delta > 0.0 {
        g * (n + 1.0)
    } else {
        // Γ(−x)[n_B(−x) + 1] = Γ(x) n_B(x)
        g * n
    }
}

/// e^{−2πik/N} for k = 0..N with table[N−k] = conj(table[k]) exactly.
struct Twiddles(Vec<Complex64>);

impl Twiddles {
    fn new(n: usize) -> Self {
        let mut table = vec![Complex64::new(0.0, 0.0); n];
        let half = n / 2;
        for k in 0..=half {
            let angle = -2.0 * std::f64::consts::PI * k as f64 / n as f64;
            table[k] = Complex64::new(angle.cos(), angle.sin());
        }
        for k in half + 1..n {
            table[k] = table[n - k].conj();
        }
        Twiddles(table)
    }

    fn at(&self, n: i64, j: usize) -> Complex64 {
        let len = self.0.len() as i64;
        self.0[(n * j as i64).rem_euclid(len) as usize]
    }
}

/// m_{λμ}(t_j) = ⟨φ_λ(t_j)|O|φ_μ(t_j)⟩ for j = 0..N (the endpoint t_N is
/// excluded). The lower off-diagonal is stored as the exact conjugate of the
/// upper one, which makes the coefficient conjugate symmetry exact.
pub fn matrix_element_series(
    solution: &FloquetSolution,
    operator: &SpinOperator,
) -> [[Vec<Complex64>; 2]; 2] {
    let n = solution.n_steps;
    let mut m00 = Vec::with_capacity(n);
    let mut m01 = Vec::with_capacity(n);
    let mut m10 = Vec::with_capacity(n);
    let mut m11 = Vec::with_capacity(n);
    for pair in &solution.modes[..n] {
        let [p0, p1] = pair;
        m00.push(Complex64::new(operator.matrix_element(p0, p0).re, 0.0));
        m11.push(Complex64::new(operator.matrix_element(p1, p1).re, 0.0));
        let off = operator.matrix_element(p0, p1);
        m01.push(off);
        m10.push(off.conj());
    }
    [[m00, m01], [m10, m11]]
}

fn dft_component(series: &[Complex64], twiddles: &Twiddles, n: i64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, &m) in series.iter().enumerate() {
        acc += m * twiddles.at(n, j);
    }
    acc / series.len() as f64
}

/// All N Fourier components of a grid series, ordered n = −N/2 .. N/2 − 1.
pub fn full_spectrum(series: &[Complex64]) -> Vec<Complex64> {
    let len = series.len();
    let tw = Twiddles::new(len);
    let half = (len / 2) as i64;
    (-half..half)
        .map(|n| dft_component(series, &tw, n))
        .collect()
}

/// Fourier coefficients a^{(n)}_{λ←μ} for n ∈ [−n_max, n_max].
#[derive(Debug, Clone)]
pub struct CouplingCoefficients {
    pub n_max: usize,
    pub omega: f64,
    pub theta: f64,
    /// entries[n + n_max][λ][μ]
    pub entries: Vec<[[Complex64; 2]; 2]>,
}

impl CouplingCoefficients {
    pub fn get(&self, lambda: usize, mu: usize, n: i64) -> Complex64 {
        self.entries[self.index(n)][lambda][mu]
    }

    pub fn orders(&self) -> impl Iterator<Item = i64> {
        let m = self.n_max as i64;
        -m..=m
    }

    fn index(&self, n: i64) -> usize {
        assert!(
            n.unsigned_abs() as usize <= self.n_max,
            "order {n} outside window ±{}",
            self.n_max
        );
        (n + self.n_max as i64) as usize
    }
}

pub fn fourier_coefficients(
    solution: &FloquetSolution,
    theta: f64,
    n_max: usize,
) -> Result<CouplingCoefficients> {
    if n_max > solution.n_steps / 4 {
        return Err(Error::Configuration(format!(
            "n_max = {n_max} exceeds N/4 = {} for a grid of {} steps",
            solution.n_steps / 4,
            solution.n_steps
        )));
    }
    let series = matrix_element_series(solution, &coupling_operator(theta));
    let twiddles = Twiddles::new(solution.n_steps);
    let m = n_max as i64;
    let entries = (-m..=m)
        .map(|n| {
            let mut block = [[Complex64::new(0.0, 0.0); 2]; 2];
            for (lambda, row) in block.iter_mut().enumerate() {
                for (mu, entry) in row.iter_mut().enumerate() {
                    *entry = dft_component(&series[lambda][mu], &twiddles, n);
                }
            }
            block
        })
        .collect();
    Ok(CouplingCoefficients {
        n_max,
        omega: solution.omega,
        theta,
        entries,
    })
}

/// Coefficients together with the channel energies and rates.
#[derive(Debug, Clone)]
pub struct TransitionTable {
    pub coefficients: CouplingCoefficients,
    pub bath: BathParams,
    pub quasienergies: [f64; 2],
    /// gaps[n + n_max][λ][μ] = Δ^{(n)}_{λμ} = ε_μ − ε_λ − nΩ
    pub energy_gaps: Vec<[[f64; 2]; 2]>,
    /// rates[n + n_max][λ][μ] = A^{(n)}_{λ←μ}
    pub rates: Vec<[[f64; 2]; 2]>,
    /// totals[λ][μ] = W_{λ←μ} = Σ_n A^{(n)}_{λ←μ}
    pub totals: [[f64; 2]; 2],
}

impl TransitionTable {
    pub fn n_max(&self) -> usize {
        self.coefficients.n_max
    }

    pub fn omega(&self) -> f64 {
        self.coefficients.omega
    }

    pub fn coefficient(&self, lambda: usize, mu: usize, n: i64) -> Complex64 {
        self.coefficients.get(lambda, mu, n)
    }

    pub fn rate(&self, lambda: usize, mu: usize, n: i64) -> f64 {
        self.rates[self.coefficients.index(n)][lambda][mu]
    }

    pub fn energy_gap(&self, lambda: usize, mu: usize, n: i64) -> f64 {
        self.energy_gaps[self.coefficients.index(n)][lambda][mu]
    }

    pub fn total(&self, lambda: usize, mu: usize) -> f64 {
        self.totals[lambda][mu]
    }

    pub fn orders(&self) -> impl Iterator<Item = i64> {
        self.coefficients.orders()
    }

    /// Largest relative violation of A^{(n)}_{λ←μ} = A^{(−n)}_{μ←λ} e^{Δ/T}.
    pub fn detailed_balance_residual(&self) -> f64 {
        let t = self.bath.temperature;
        let mut worst = 0.0f64;
        for n in self.orders() {
            for lambda in 0..2 {
                for mu in 0..2 {
                    let forward = self.rate(lambda, mu, n);
                    let backward =
                        self.rate(mu, lambda, -n) * (self.energy_gap(lambda, mu, n) / t).exp();
                    let scale = forward.abs().max(backward.abs());
                    if scale > 0.0 {
                        worst = worst.max((forward - backward).abs() / scale);
                    }
                }
            }
        }
        worst
    }
}

pub fn rates(
    coefficients: &CouplingCoefficients,
    bath: &BathParams,
    solution: &FloquetSolution,
) -> Result<TransitionTable> {
    if coefficients.omega != solution.omega {
        return Err(Error::Configuration(
            "coefficients and Floquet solution use different drive frequencies".into(),
        ));
    }
    let eps = solution.quasienergies;
    let omega = solution.omega;
    let mut energy_gaps = Vec::with_capacity(coefficients.entries.len());
    let mut table = Vec::with_capacity(coefficients.entries.len());
    let mut totals = [[0.0; 2]; 2];
    for (n, block) in coefficients.orders().zip(&coefficients.entries) {
        let mut gaps = [[0.0; 2]; 2];
        let mut rate = [[0.0; 2]; 2];
        for lambda in 0..2 {
            for mu in 0..2 {
                let delta = if lambda == mu && n == 0 {
                    0.0
                } else {
                    eps[mu] - eps[lambda] - n as f64 * omega
                };
                gaps[lambda][mu] = delta;
                let a = emission_prefactor(delta, bath) * block[lambda][mu].norm_sqr();
                if !(a.is_finite() && a >= 0.0) {
                    return Err(Error::InvariantViolation(format!(
                        "rate A^({n})_{{{lambda}<-{mu}}} = {a} is not a finite non-negative number"
                    )));
                }
                rate[lambda][mu] = a;
                totals[lambda][mu] += a;
            }
        }
        energy_gaps.push(gaps);
        table.push(rate);
    }
    Ok(TransitionTable {
        coefficients: coefficients.clone(),
        bath: *bath,
        quasienergies: eps,
        energy_gaps,
        rates: table,
        totals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::floquet;
    use crate::model::SystemParams;
    use std::f64::consts::PI;

    fn bath() -> BathParams {
        BathParams::new(0.01, 10.0, 3.0).unwrap()
    }

    #[test]
    fn spectral_density_values() {
        let b = bath();
        assert_eq!(spectral_density(0.0, &b), 0.0);
        assert!((spectral_density(10.0, &b) - 0.01 / 20.0).abs() < 1e-18);
        assert!((spectral_density(-10.0, &b) + 0.01 / 20.0).abs() < 1e-18);
    }

    #[test]
    fn bose_occupation_values() {
        let t = 3.0;
        assert!((bose_occupation(t * 2f64.ln(), t).unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(bose_occupation(1e6, t).unwrap(), 0.0);
        assert_eq!(bose_occupation(0.0, t), Err(Error::ZeroFrequency));
    }

    #[test]
    fn negative_frequency_identity() {
        // Γ(−1)[n_B(−1)+1] = Γ(1) n_B(1), checked through the raw definitions
        let b = bath();
        let lhs = spectral_density(-1.0, &b) * (bose_occupation(-1.0, 3.0).unwrap() + 1.0);
        let rhs = spectral_density(1.0, &b) * bose_occupation(1.0, 3.0).unwrap();
        assert!((lhs - rhs).abs() <= 1e-15 * rhs.abs());
        assert!((emission_prefactor(-1.0, &b) - rhs).abs() <= 1e-15 * rhs);
    }

    #[test]
    fn prefactor_is_continuous_at_zero() {
        let b = bath();
        let limit = emission_prefactor(0.0, &b);
        assert!((limit - 0.01 * 3.0 / 100.0).abs() < 1e-18);
        // Γ(Δ)[n_B(Δ)+1] = γT/ω_c² + γΔ/(2ω_c²) + O(Δ²)
        for d in [1e-6, -1e-6] {
            let linear = limit + 0.01 * d / 200.0;
            assert!((emission_prefactor(d, &b) - linear).abs() < 1e-10 * limit);
        }
    }

    #[test]
    fn static_limit_sigma_x_coefficients() {
        let p = SystemParams::new(1.0, 0.0, 0.0, 40.0, PI / 2.0).unwrap();
        let sol = floquet::solve(&p, 256).unwrap();
        let c = fourier_coefficients(&sol, PI / 2.0, 3).unwrap();
        for n in -3..=3 {
            for l in 0..2 {
                for m in 0..2 {
                    let expect = match (n, l, m) {
                        (0, 0, 0) => -1.0,
                        (0, 1, 1) => 1.0,
                        _ => 0.0,
                    };
                    assert!((c.get(l, m, n) - expect).norm() < 1e-10, "n={n} {l}{m}");
                }
            }
        }
    }

    #[test]
    fn window_too_wide_is_rejected() {
        let p = SystemParams::new(1.0, 0.0, 0.0, 40.0, 0.0).unwrap();
        let sol = floquet::solve(&p, 64).unwrap();
        assert!(fourier_coefficients(&sol, 0.0, 16).is_ok());
        assert!(matches!(
            fourier_coefficients(&sol, 0.0, 17),
            Err(Error::Configuration(_))
        ));
    }

    #[test]
    fn static_detailed_balance() {
        let p = SystemParams::new(1.0, 0.0, 0.0, 40.0, PI / 4.0).unwrap();
        let sol = floquet::solve(&p, 256).unwrap();
        let c = fourier_coefficients(&sol, PI / 4.0, 3).unwrap();
        let t = rates(&c, &bath(), &sol).unwrap();
        for n in [-3, -2, -1, 1, 2, 3] {
            for l in 0..2 {
                for m in 0..2 {
                    assert!(t.rate(l, m, n) < 1e-20);
                }
            }
        }
        let r = t.rate(0, 1, 0) / t.rate(1, 0, 0);
        assert!((r - (1.0f64 / 3.0).exp()).abs() < 1e-12);
    }

    #[test]
    fn gamma_scales_rates_linearly() {
        let p = SystemParams::new(1.0, 0.1, 50.0, 40.0, 1.0).unwrap();
        let sol = floquet::solve(&p, 256).unwrap();
        let c = fourier_coefficients(&sol, 1.0, 3).unwrap();
        let b = bath();
        let b2 = BathParams { gamma: 0.02, ..b };
        let t1 = rates(&c, &b, &sol).unwrap();
        let t2 = rates(&c, &b2, &sol).unwrap();
        for n in -3..=3 {
            for l in 0..2 {
                for m in 0..2 {
                    assert_eq!(2.0 * t1.rate(l, m, n), t2.rate(l, m, n));
                }
            }
        }
    }
}
