//! High-frequency (rotating-frame Magnus) expressions for the driven
//! two-level system, used as an analytic cross-check of the numerics.
//!
//! In the frame U_rot(t) = exp[−iσ_z (h_z1/2Ω) sin Ωt] the Hamiltonian has
//! Fourier components H^{(m)} = (h_x/2) J_m(z) σ_x (m even) or i σ_y (m odd),
//! z = h_z1/Ω. To first order in 1/Ω the micromotion operator is
//!
//!   Λ_r(t) = Σ_{m even} l_m sin(mΩt) σ_x + Σ_{m odd} l_m (cos(mΩt) − 1) σ_y,
//!   l_m = h_x J_m(z)/(mΩ),
//!
//! and the Fourier coefficients of σ_θ(t) take the form
//!
//!   a^{(n)} = S_x⟨σ_x⟩ + i S_y⟨σ_y⟩ + S_z⟨σ_z⟩
//!
//! with matrix elements taken between the stroboscopic Floquet states.
//!
//! The coefficients below follow from expanding e^{iΛ}σ e^{−iΛ} ≈ σ + i[Λ, σ]
//! and Fourier transforming term by term. They differ from some printed
//! compressions of the same expansion in signs and factors of two; every
//! expression here is pinned against the numerical DFT in the test suite.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::floquet::{align_phase, fold_quasienergy};
use crate::model::{inner, sigma_x_eigenbasis, Ket, SpinOperator, SystemParams};

pub const MAX_ORDER: i32 = 200;
pub const MAX_ARGUMENT: f64 = 1e3;
/// Series truncation: stop once |l_m| falls below this (and m > z).
pub const L_TRUNCATION: f64 = 1e-14;

/// J_n(x) for any integer order and real argument (Miller's algorithm).
fn jn(n: i32, x: f64) -> f64 {
    if n < 0 {
        let v = jn(-n, x);
        return if n % 2 == 0 { v } else { -v };
    }
    if x < 0.0 {
        let v = jn(n, -x);
        return if n % 2 == 0 { v } else { -v };
    }
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let order = n as usize;
    let big = (order as f64).max(x);
    let mut start = (big + 20.0 + (40.0 * big).sqrt()) as usize;
    start += start % 2;

    // Downward recurrence J_{k−1} = (2k/x) J_k − J_{k+1}, normalized by
    // J_0 + 2 Σ_k J_{2k} = 1.
    let mut next = 0.0f64;
    let mut current = 1e-300f64;
    let mut sum = 0.0f64;
    let mut result = 0.0f64;
    for k in (1..=start).rev() {
        let previous = 2.0 * k as f64 / x * current - next;
        next = current;
        current = previous;
        // `current` now holds J_{k−1}
        if (k - 1) == order {
            result = current;
        }
        if (k - 1) % 2 == 0 && k > 1 {
            sum += 2.0 * current;
        }
        if current.abs() > 1e250 {
            current *= 1e-250;
            next *= 1e-250;
            sum *= 1e-250;
            result *= 1e-250;
        }
    }
    sum += current;
    result / sum
}

/// Bessel function of the first kind, J_n(x), for |n| ≤ 200 and |x| ≤ 1000.
pub fn bessel_j(n: i32, x: f64) -> Result<f64> {
    if n.abs() > MAX_ORDER {
        return Err(Error::Domain(format!(
            "Bessel order {n} outside |n| ≤ {MAX_ORDER}"
        )));
    }
    if !(x.is_finite() && x.abs() <= MAX_ARGUMENT) {
        return Err(Error::Domain(format!(
            "Bessel argument {x} outside |x| ≤ {MAX_ARGUMENT}"
        )));
    }
    Ok(jn(n, x))
}

/// k-th positive root of J_0 (k ≥ 1).
pub fn bessel_root(k: u32) -> f64 {
    assert!(k >= 1, "Bessel roots are indexed from 1");
    let beta = (k as f64 - 0.25) * PI;
    let (mut lo, mut hi) = (beta - 0.5, beta + 0.5);
    let mut z = beta + 1.0 / (8.0 * beta);
    let f_lo = jn(0, lo);
    for _ in 0..100 {
        let f = jn(0, z);
        if f == 0.0 {
            return z;
        }
        if (f > 0.0) == (f_lo > 0.0) {
            lo = z;
        } else {
            hi = z;
        }
        // J_0' = −J_1
        let step = f / jn(1, z);
        let mut candidate = z + step;
        if !(candidate > lo && candidate < hi) {
            candidate = 0.5 * (lo + hi);
        }
        let converged = (candidate - z).abs() <= 1e-15 * z;
        z = candidate;
        if converged {
            break;
        }
    }
    z
}

/// CDT drive amplitudes z_k Ω for k = 1..=count.
pub fn cdt_amplitudes(omega: f64, count: u32) -> Vec<f64> {
    (1..=count).map(|k| bessel_root(k) * omega).collect()
}

/// Index and value of the J_0 root nearest to `z`.
pub fn nearest_bessel_root(z: f64) -> (u32, f64) {
    let mut best = (1, bessel_root(1));
    let mut k = 2;
    loop {
        let r = bessel_root(k);
        if (r - z).abs() < (best.1 - z).abs() {
            best = (k, r);
        }
        if r > z + PI {
            return best;
        }
        k += 1;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HfCoefficients {
    pub order: i32,
    pub s_x: f64,
    pub s_y: f64,
    pub s_z: f64,
    /// l[m] = h_x J_m(z)/(mΩ) for m = 1..=m_max, l[0] = 0
    pub l: Vec<f64>,
    pub alpha_x: f64,
    pub g_x: f64,
    pub g_z: f64,
    /// Ω < 5 h_x: outside the regime where the expansion is expected to hold.
    pub low_frequency: bool,
}

impl HfCoefficients {
    pub fn m_max(&self) -> usize {
        self.l.len() - 1
    }

    /// The operator S_x σ_x + i S_y σ_y + S_z σ_z whose matrix elements
    /// between stroboscopic states give a^{(n)}.
    pub fn operator(&self) -> SpinOperator {
        SpinOperator::from_pauli(
            Complex64::new(0.0, 0.0),
            Complex64::new(self.s_x, 0.0),
            Complex64::new(0.0, self.s_y),
            Complex64::new(self.s_z, 0.0),
        )
    }
}

/// l_m = h_x J_m(z)/(mΩ), truncated once negligible beyond the oscillatory region.
pub fn micromotion_amplitudes(params: &SystemParams) -> Vec<f64> {
    let z = params.drive_ratio();
    let mut l = vec![0.0];
    for m in 1..=(MAX_ORDER as usize) {
        let v = params.h_x * jn(m as i32, z) / (m as f64 * params.omega);
        l.push(v);
        if m as f64 > z.abs() + 1.0 && v.abs() < L_TRUNCATION {
            break;
        }
    }
    l
}

/// α_x^{(n)} = Σ_{m≥1} l_m [J_{n+m}(z) − (−1)^m J_{n−m}(z)]
fn alpha_x(l: &[f64], n: i32, z: f64) -> f64 {
    l.iter()
        .enumerate()
        .skip(1)
        .map(|(m, &lm)| {
            let m = m as i32;
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            lm * (jn(n + m, z) - sign * jn(n - m, z))
        })
        .sum()
}

pub fn s_coefficients(params: &SystemParams, n: i32) -> HfCoefficients {
    let z = params.drive_ratio();
    let g_x = params.theta.sin();
    let g_z = params.theta.cos();
    let l = micromotion_amplitudes(params);
    let l_at = |m: usize| l.get(m).copied().unwrap_or(0.0);
    let odd_sum: f64 = l.iter().skip(1).step_by(2).sum();
    let jn_z = jn(n, z);
    let alpha = alpha_x(&l, n, z);
    let abs_n = n.unsigned_abs() as usize;

    let (s_x, s_y, s_z) = if n % 2 == 0 {
        let s_x = g_x * jn_z + if n == 0 { 2.0 * g_z * odd_sum } else { 0.0 };
        let s_y = if n == 0 {
            0.0
        } else {
            -g_z * (n.signum() as f64) * l_at(abs_n)
        };
        let s_z = if n == 0 { g_z } else { 0.0 } - 2.0 * g_x * jn_z * odd_sum;
        (s_x, s_y, s_z)
    } else {
        (-g_z * l_at(abs_n), g_x * jn_z, g_x * alpha)
    };

    HfCoefficients {
        order: n,
        s_x,
        s_y,
        s_z,
        l,
        alpha_x: alpha,
        g_x,
        g_z,
        low_frequency: params.omega < 5.0 * params.h_x,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveHamiltonian {
    /// σ_x coefficient: (h_x/2)J_0(z) + h_z0 h_x S(z)/Ω
    pub coeff_x: f64,
    /// σ_z coefficient: h_z0/2 − (h_x²/Ω) J_0(z) S(z)
    pub coeff_z: f64,
    /// ∓√(coeff_x² + coeff_z²), folded and ascending.
    pub quasienergies: [f64; 2],
}

impl EffectiveHamiltonian {
    pub fn operator(&self) -> SpinOperator {
        let zero = Complex64::new(0.0, 0.0);
        SpinOperator::from_pauli(
            zero,
            Complex64::new(self.coeff_x, 0.0),
            zero,
            Complex64::new(self.coeff_z, 0.0),
        )
    }

    /// Ascending eigenstates, phase-aligned like the engine's modes. Falls
    /// back to (|−1⟩_x, |+1⟩_x) when the operator vanishes.
    pub fn eigenstates(&self) -> [Ket; 2] {
        let norm = self.coeff_x.hypot(self.coeff_z);
        if norm == 0.0 {
            let (minus, plus) = sigma_x_eigenbasis();
            return [minus, plus];
        }
        // polar angle from the z axis: the operator is ∝ sin α σ_x + cos α σ_z
        let alpha = self.coeff_x.atan2(self.coeff_z);
        let (s, c) = (0.5 * alpha).sin_cos();
        let upper = [Complex64::new(c, 0.0), Complex64::new(s, 0.0)];
        let lower = [Complex64::new(-s, 0.0), Complex64::new(c, 0.0)];
        [align_phase(lower), align_phase(upper)]
    }
}

/// S(z) = Σ_{k≥1} J_{2k−1}(z)/(2k−1)
fn odd_bessel_sum(z: f64) -> f64 {
    let mut total = 0.0;
    let mut m = 1;
    loop {
        let term = jn(m, z) / m as f64;
        total += term;
        if m as f64 > z.abs() + 1.0 && term.abs() < 1e-17 {
            break;
        }
        m += 2;
        if m > 2 * MAX_ORDER {
            break;
        }
    }
    total
}

/// First-order stroboscopic (t₀ = 0) Floquet Hamiltonian.
pub fn effective_hamiltonian(params: &SystemParams) -> EffectiveHamiltonian {
    let z = params.drive_ratio();
    let j0 = jn(0, z);
    let s = odd_bessel_sum(z);
    let coeff_x = 0.5 * params.h_x * j0 + params.h_z0 * params.h_x * s / params.omega;
    let coeff_z = 0.5 * params.h_z0 - params.h_x * params.h_x / params.omega * j0 * s;
    let e = coeff_x.hypot(coeff_z);
    let mut q = [
        fold_quasienergy(-e, params.omega),
        fold_quasienergy(e, params.omega),
    ];
    q.sort_by(f64::total_cmp);
    EffectiveHamiltonian {
        coeff_x,
        coeff_z,
        quasienergies: q,
    }
}

fn elements_in_basis(op: &SpinOperator, basis: &[Ket; 2]) -> [[Complex64; 2]; 2] {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (lambda, row) in out.iter_mut().enumerate() {
        for (mu, entry) in row.iter_mut().enumerate() {
            *entry = op.matrix_element(&basis[lambda], &basis[mu]);
        }
    }
    out
}

/// a^{(n)}_{λ←μ} between the eigenstates of the first-order effective
/// Hamiltonian, labelled by ascending quasienergy.
pub fn analytic_transition_elements(params: &SystemParams, n: i32) -> [[Complex64; 2]; 2] {
    let op = s_coefficients(params, n).operator();
    elements_in_basis(&op, &effective_hamiltonian(params).eigenstates())
}

/// The same elements in the bare σ_x eigenbasis with labels chosen by
/// sign J_0(z): λ = 0 ↔ |−1⟩_x for J_0 ≥ 0 and |+1⟩_x otherwise.
pub fn sigma_x_basis_elements(params: &SystemParams, n: i32) -> [[Complex64; 2]; 2] {
    let op = s_coefficients(params, n).operator();
    let (minus, plus) = sigma_x_eigenbasis();
    let basis = if jn(0, params.drive_ratio()) >= 0.0 {
        [minus, plus]
    } else {
        [plus, minus]
    };
    elements_in_basis(&op, &basis)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioJump {
    pub root_index: u32,
    /// z_k
    pub root: f64,
    /// I_r/I_b just below z_k Ω
    pub ratio_left: f64,
    /// I_r/I_b just above z_k Ω
    pub ratio_right: f64,
    pub magnitude: f64,
}

/// One-sided limits of I_r/I_b at the CDT point nearest to h_z1/Ω.
///
/// Uses |a^{(−1)}_{1←0}|²/|a^{(−1)}_{0←1}|² with equal populations and
/// h_z0 = 0; the two sides differ only by the exchange of the Floquet labels.
pub fn ratio_jump_prediction(params: &SystemParams) -> Result<RatioJump> {
    let z = params.drive_ratio();
    let (k, root) = nearest_bessel_root(z);
    if (z - root).abs() > 0.1 {
        return Err(Error::Domain(format!(
            "h_z1/Ω = {z} is not within 0.1 of a J_0 root; nearest is z_{k} = {root}"
        )));
    }
    let at_root = SystemParams {
        h_z0: 0.0,
        h_z1: root * params.omega,
        ..*params
    };
    let op = s_coefficients(&at_root, -1).operator();
    let side = |offset: f64| -> Result<f64> {
        let p = at_root.with_h_z1((root + offset) * params.omega);
        let a = elements_in_basis(&op, &effective_hamiltonian(&p).eigenstates());
        let den = a[0][1].norm_sqr();
        if den == 0.0 {
            return Err(Error::Domain(
                "blue-shifted coefficient vanishes; ratio undefined".into(),
            ));
        }
        Ok(a[1][0].norm_sqr() / den)
    };
    let ratio_left = side(-1e-7)?;
    let ratio_right = side(1e-7)?;
    Ok(RatioJump {
        root_index: k,
        root,
        ratio_left,
        ratio_right,
        magnitude: (ratio_left - ratio_right).abs(),
    })
}

/// Overlap-based check that a pair of states agrees with another up to phase.
pub fn basis_fidelity(a: &[Ket; 2], b: &[Ket; 2]) -> f64 {
    inner(&a[0], &b[0]).norm_sqr().min(inner(&a[1], &b[1]).norm_sqr())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Power series Σ_k (−1)^k (x/2)^{2k+n} / (k!(k+n)!), fine for small x.
    fn series_j(n: i32, x: f64) -> f64 {
        let n_abs = n.unsigned_abs() as i32;
        let mut term = (0.5 * x).powi(n_abs) / (1..=n_abs).map(f64::from).product::<f64>();
        let mut sum = term;
        for k in 1..200 {
            term *= -(0.25 * x * x) / (k as f64 * (k + n_abs) as f64);
            sum += term;
            if term.abs() < 1e-20 {
                break;
            }
        }
        if n < 0 && n_abs % 2 == 1 {
            -sum
        } else {
            sum
        }
    }

    /// (1/2π)∫ cos(nτ − x sin τ) dτ by the periodic trapezoid rule.
    fn quadrature_j(n: i32, x: f64) -> f64 {
        let m = 4096;
        let h = 2.0 * PI / m as f64;
        (0..m)
            .map(|i| {
                let t = i as f64 * h;
                (n as f64 * t - x * t.sin()).cos()
            })
            .sum::<f64>()
            / m as f64
    }

    #[test]
    fn bessel_special_values() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(3, 0.0).unwrap(), 0.0);
        for x in [0.5, 2.4048, 10.0] {
            let a = bessel_j(-1, x).unwrap();
            let b = bessel_j(1, x).unwrap();
            assert!((a + b).abs() < 1e-15);
        }
    }

    #[test]
    fn bessel_matches_independent_oracles() {
        for n in [-7, -2, 0, 1, 2, 5, 13, 40] {
            for x in [0.01, 0.3, 1.0, 2.5, 6.0, 9.5] {
                let v = bessel_j(n, x).unwrap();
                assert!((v - series_j(n, x)).abs() < 1e-12, "series n={n} x={x}");
            }
        }
        for n in [0, 1, 3, 50, 150, 200, -199] {
            for x in [-37.0, 12.5, 100.0, 333.3, 999.0] {
                let v = bessel_j(n, x).unwrap();
                assert!((v - quadrature_j(n, x)).abs() < 1e-12, "quad n={n} x={x}");
            }
        }
    }

    #[test]
    fn bessel_domain_errors() {
        assert!(matches!(bessel_j(201, 1.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_j(0, 1000.5), Err(Error::Domain(_))));
        assert!(matches!(bessel_j(0, f64::NAN), Err(Error::Domain(_))));
    }

    #[test]
    fn bessel_sum_rule() {
        for x in [0.7, 4.0, 17.0, 60.0] {
            let n_max = (x as i32) + 40;
            let s: f64 = (-n_max..=n_max).map(|n| jn(n, x).powi(2)).sum();
            assert!((s - 1.0).abs() < 1e-10, "x={x}");
        }
    }

    /// Bisection on the power series: independent of Miller's algorithm and Newton.
    fn series_root(mut lo: f64, mut hi: f64) -> f64 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if (series_j(0, mid) > 0.0) == (series_j(0, lo) > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn bessel_roots_match_series_bisection() {
        let z1 = series_root(2.0, 3.0);
        let z2 = series_root(5.0, 6.0);
        assert!((bessel_root(1) - z1).abs() < 1e-12);
        assert!((bessel_root(2) - z2).abs() < 1e-12);
        assert!((bessel_root(1) - 2.404825557695773).abs() < 1e-12);
        assert!((bessel_root(2) - 5.520078110286311).abs() < 1e-12);
        for k in 1..=10 {
            assert!(jn(0, bessel_root(k)).abs() < 1e-11, "k={k}");
        }
    }

    #[test]
    fn nearest_root_lookup() {
        assert_eq!(nearest_bessel_root(2.3).0, 1);
        assert_eq!(nearest_bessel_root(5.0).0, 2);
        assert_eq!(nearest_bessel_root(0.0).0, 1);
        assert_eq!(nearest_bessel_root(8.7).0, 3);
    }

    fn p(h_z1: f64, omega: f64, theta: f64) -> SystemParams {
        SystemParams::new(1.0, 0.0, h_z1, omega, theta).unwrap()
    }

    #[test]
    fn sigma_x_coupling_order_zero() {
        let c = s_coefficients(&p(96.0, 40.0, PI / 2.0), 0);
        assert!((c.s_x - jn(0, 2.4)).abs() < 1e-15);
        assert!(c.s_y.abs() < 1e-16);
        // σ_z-part of order zero is the O(h_x/Ω) micromotion tilt, g_z = 0 leaves
        // only the −2 g_x J_0 Σ l_odd term
        let odd: f64 = c.l.iter().skip(1).step_by(2).sum();
        assert!((c.s_z + 2.0 * jn(0, 2.4) * odd).abs() < 1e-15);
    }

    #[test]
    fn static_limit_coefficients() {
        for theta in [0.0, 0.4, PI / 2.0] {
            let c0 = s_coefficients(&p(0.0, 40.0, theta), 0);
            assert!((c0.s_x - theta.sin()).abs() < 1e-15);
            assert!((c0.s_z - theta.cos()).abs() < 1e-15);
            for n in [-3, -2, -1, 1, 2, 3] {
                let c = s_coefficients(&p(0.0, 40.0, theta), n);
                assert_eq!((c.s_x, c.s_y, c.s_z), (0.0, 0.0, 0.0));
            }
        }
    }

    #[test]
    fn first_sideband_dominated_by_sy() {
        let params = p(40.0, 40.0, PI / 2.0);
        let c = s_coefficients(&params, -1);
        assert!((c.s_y - jn(-1, 1.0)).abs() < 1e-15);
        assert!(c.s_z.abs() < 2.0 / 40.0);
        assert!(c.s_y.abs() > 10.0 * c.s_z.abs());
    }

    #[test]
    fn truncation_and_parity_structure() {
        let c = s_coefficients(&p(240.0, 40.0, PI / 2.0), 2);
        assert!(c.l.last().unwrap().abs() < L_TRUNCATION);
        assert!(c.m_max() < 40);
        // g_z = 0: the g_z-weighted S_y term is absent for even n
        assert!(c.s_y.abs() < 1e-16);
        assert!(s_coefficients(&p(40.0, 4.0, 0.3), 1).low_frequency);
    }

    #[test]
    fn analytic_table_conjugate_symmetry() {
        for theta in [0.0, PI / 4.0, PI / 2.0, 2.0] {
            for z in [0.4, 1.7, 3.3] {
                let params = p(z * 40.0, 40.0, theta);
                for n in 1..=3 {
                    let plus = analytic_transition_elements(&params, n);
                    let minus = analytic_transition_elements(&params, -n);
                    for l in 0..2 {
                        for m in 0..2 {
                            assert!((plus[l][m] - minus[m][l].conj()).norm() < 1e-14);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn effective_hamiltonian_limits() {
        let h = effective_hamiltonian(&p(0.0, 40.0, 0.0));
        assert_eq!(h.quasienergies, [-0.5, 0.5]);
        let at_root = effective_hamiltonian(&p(bessel_root(1) * 40.0, 40.0, 0.0));
        assert!(at_root.coeff_x.abs() < 1e-12);
        assert!(at_root.coeff_z.abs() < 1e-12);
    }

    #[test]
    fn eigenstates_diagonalize_the_effective_hamiltonian() {
        for (h_z0, z) in [(0.0, 0.0), (0.0, 1.3), (0.4, 3.9), (-2.0, 0.2)] {
            let params = SystemParams::new(1.0, h_z0, z * 40.0, 40.0, 0.3).unwrap();
            let h = effective_hamiltonian(&params);
            let e = h.coeff_x.hypot(h.coeff_z);
            for (v, sign) in h.eigenstates().iter().zip([-1.0, 1.0]) {
                let hv = h.operator().apply(v);
                for c in 0..2 {
                    assert!((hv[c] - v[c] * (sign * e)).norm() < 1e-14);
                }
            }
        }
        let [lower, _] = effective_hamiltonian(&p(0.0, 40.0, 0.0)).eigenstates();
        let minus = sigma_x_eigenbasis().0;
        assert!((lower[0] - minus[0]).norm() < 1e-15 && (lower[1] - minus[1]).norm() < 1e-15);
    }

    #[test]
    fn ratio_jump_scales_inversely_with_frequency() {
        let j40 = ratio_jump_prediction(&p(bessel_root(1) * 40.0, 40.0, PI / 4.0)).unwrap();
        let j80 = ratio_jump_prediction(&p(bessel_root(1) * 80.0, 80.0, PI / 4.0)).unwrap();
        assert!(j40.ratio_left > 1.0 && j40.ratio_right < 1.0);
        let half = 0.5 * j40.magnitude;
        assert!((j80.magnitude - half).abs() <= 0.15 * half);
        let j_far = ratio_jump_prediction(&p(bessel_root(1) * 4e4, 4e4, PI / 4.0)).unwrap();
        assert!(j_far.magnitude < 1e-3 * j40.magnitude * 10.0);
    }

    #[test]
    fn ratio_jump_requires_nearby_root() {
        let err = ratio_jump_prediction(&p(1.0 * 40.0, 40.0, PI / 4.0)).unwrap_err();
        match err {
            Error::Domain(msg) => assert!(msg.contains("z_1")),
            other => panic!("unexpected {other:?}"),
        }
    }
}
