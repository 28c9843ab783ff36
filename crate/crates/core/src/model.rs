//! System and bath parameters, 2×2 spin algebra and the driven Hamiltonian.
//!
//! Units: ħ = k_B = 1. Energies are conventionally measured in units of the
//! tunneling amplitude `h_x`, but any positive `h_x` is accepted.
//!
//!   H(t) = (h_x/2) σ_x + (h_z(t)/2) σ_z,   h_z(t) = h_z0 + h_z1 cos(Ω t)
//!
//! The bath couples through σ_θ = sin θ σ_x + cos θ σ_z.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Two-component state vector.
pub type Ket = [Complex64; 2];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    pub h_x: f64,
    pub h_z0: f64,
    pub h_z1: f64,
    pub omega: f64,
    pub theta: f64,
}

impl SystemParams {
    pub fn new(h_x: f64, h_z0: f64, h_z1: f64, omega: f64, theta: f64) -> Result<Self> {
        let p = SystemParams {
            h_x,
            h_z0,
            h_z1,
            omega,
            theta,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("h_x", self.h_x),
            ("h_z0", self.h_z0),
            ("h_z1", self.h_z1),
            ("omega", self.omega),
            ("theta", self.theta),
        ] {
            if !value.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    reason: "must be finite",
                });
            }
        }
        if self.omega <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "omega",
                value: self.omega,
                reason: "drive frequency must be positive",
            });
        }
        if self.h_x <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "h_x",
                value: self.h_x,
                reason: "tunneling amplitude must be positive",
            });
        }
        Ok(())
    }

    /// Drive period τ = 2π/Ω.
    pub fn period(&self) -> f64 {
        2.0 * PI / self.omega
    }

    /// Reduced drive amplitude h_z1/Ω, the argument of every Bessel factor.
    pub fn drive_ratio(&self) -> f64 {
        self.h_z1 / self.omega
    }

    pub fn with_h_z1(self, h_z1: f64) -> Self {
        SystemParams { h_z1, ..self }
    }

    pub fn with_theta(self, theta: f64) -> Self {
        SystemParams { theta, ..self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BathParams {
    pub gamma: f64,
    pub omega_c: f64,
    pub temperature: f64,
}

impl BathParams {
    pub fn new(gamma: f64, omega_c: f64, temperature: f64) -> Result<Self> {
        let b = BathParams {
            gamma,
            omega_c,
            temperature,
        };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("gamma", self.gamma),
            ("omega_c", self.omega_c),
            ("temperature", self.temperature),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    reason: "must be finite and positive",
                });
            }
        }
        Ok(())
    }
}

impl Default for BathParams {
    fn default() -> Self {
        BathParams {
            gamma: 0.01,
            omega_c: 10.0,
            temperature: 3.0,
        }
    }
}

/// Dense 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinOperator(pub [[Complex64; 2]; 2]);

impl SpinOperator {
    pub const fn identity() -> Self {
        SpinOperator([[ONE, ZERO], [ZERO, ONE]])
    }

    pub const fn zero() -> Self {
        SpinOperator([[ZERO, ZERO], [ZERO, ZERO]])
    }

    pub const fn sigma_x() -> Self {
        SpinOperator([[ZERO, ONE], [ONE, ZERO]])
    }

    pub const fn sigma_y() -> Self {
        SpinOperator([[ZERO, Complex64::new(0.0, -1.0)], [I, ZERO]])
    }

    pub const fn sigma_z() -> Self {
        SpinOperator([[ONE, ZERO], [ZERO, Complex64::new(-1.0, 0.0)]])
    }

    /// a₀·I + a_x σ_x + a_y σ_y + a_z σ_z with complex weights.
    pub fn from_pauli(a0: Complex64, ax: Complex64, ay: Complex64, az: Complex64) -> Self {
        SpinOperator([[a0 + az, ax - I * ay], [ax + I * ay, a0 - az]])
    }

    /// Inverse of [`SpinOperator::from_pauli`]: (a₀, a_x, a_y, a_z).
    pub fn pauli_components(&self) -> [Complex64; 4] {
        let m = &self.0;
        [
            (m[0][0] + m[1][1]) * 0.5,
            (m[0][1] + m[1][0]) * 0.5,
            (m[1][0] - m[0][1]) * (I * -0.5),
            (m[0][0] - m[1][1]) * 0.5,
        ]
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        SpinOperator([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let m = &self.0;
        SpinOperator([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn apply(&self, v: &Ket) -> Ket {
        let m = &self.0;
        [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
    }

    /// ⟨u|A|v⟩
    pub fn matrix_element(&self, u: &Ket, v: &Ket) -> Complex64 {
        let av = self.apply(v);
        u[0].conj() * av[0] + u[1].conj() * av[1]
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut d = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                d = d.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        d
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// max |(A − A†)_{ij}|
    pub fn hermiticity_error(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// max |(U†U − I)_{ij}|
    pub fn unitarity_error(&self) -> f64 {
        (self.adjoint() * *self).max_abs_diff(&Self::identity())
    }

    /// exp(−i H s) for Hermitian H, evaluated in closed form through the
    /// Pauli decomposition H = h₀ I + h·σ.
    pub fn exp_i_hermitian(h: &SpinOperator, s: f64) -> SpinOperator {
        let [a0, ax, ay, az] = h.pauli_components();
        let (h0, hx, hy, hz) = (a0.re, ax.re, ay.re, az.re);
        let norm = (hx * hx + hy * hy + hz * hz).sqrt();
        let phi = norm * s;
        let c = phi.cos();
        // sin(φ)/|h| stays well defined as |h| → 0
        let sinc = if phi.abs() < 1e-8 {
            s * (1.0 - phi * phi / 6.0)
        } else {
            phi.sin() / norm
        };
        let phase = Complex64::from_polar(1.0, -h0 * s);
        let k = Complex64::new(0.0, -sinc);
        SpinOperator::from_pauli(Complex64::new(c, 0.0), k * hx, k * hy, k * hz).scale(phase)
    }
}

impl Mul for SpinOperator {
    type Output = SpinOperator;

    fn mul(self, rhs: SpinOperator) -> SpinOperator {
        let a = &self.0;
        let b = &rhs.0;
        let mut out = [[ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        SpinOperator(out)
    }
}

impl Add for SpinOperator {
    type Output = SpinOperator;

    fn add(self, rhs: SpinOperator) -> SpinOperator {
        let mut out = self.0;
        for (r, row) in out.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry += rhs.0[r][c];
            }
        }
        SpinOperator(out)
    }
}

impl Sub for SpinOperator {
    type Output = SpinOperator;

    fn sub(self, rhs: SpinOperator) -> SpinOperator {
        self + rhs.scale(Complex64::new(-1.0, 0.0))
    }
}

/// Real-weighted Pauli combination w_x σ_x + w_z σ_z.
fn xz_combination(wx: f64, wz: f64) -> SpinOperator {
    SpinOperator::from_pauli(
        ZERO,
        Complex64::new(wx, 0.0),
        ZERO,
        Complex64::new(wz, 0.0),
    )
}

/// H(t) = (h_x/2)σ_x + ((h_z0 + h_z1 cos Ωt)/2)σ_z
pub fn hamiltonian_at(params: &SystemParams, t: f64) -> SpinOperator {
    let h_z = params.h_z0 + params.h_z1 * (params.omega * t).cos();
    xz_combination(0.5 * params.h_x, 0.5 * h_z)
}

/// H at the drive phase 2π·(j mod n)/n, i.e. at t = jτ/n. Reducing the index
/// first makes the grid Hamiltonian bit-identical across periods.
pub fn hamiltonian_on_grid(params: &SystemParams, j: usize, n: usize) -> SpinOperator {
    let phase = 2.0 * PI * ((j % n) as f64) / n as f64;
    let h_z = params.h_z0 + params.h_z1 * phase.cos();
    xz_combination(0.5 * params.h_x, 0.5 * h_z)
}

/// σ_θ = sin θ σ_x + cos θ σ_z
pub fn coupling_operator(theta: f64) -> SpinOperator {
    xz_combination(theta.sin(), theta.cos())
}

/// Eigenvectors of σ_x: (|−1⟩_x, |+1⟩_x) with real non-negative first entry.
pub fn sigma_x_eigenbasis() -> (Ket, Ket) {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    (
        [Complex64::new(s, 0.0), Complex64::new(-s, 0.0)],
        [Complex64::new(s, 0.0), Complex64::new(s, 0.0)],
    )
}

pub fn inner(u: &Ket, v: &Ket) -> Complex64 {
    u[0].conj() * v[0] + u[1].conj() * v[1]
}

pub fn ket_norm(v: &Ket) -> f64 {
    (v[0].norm_sqr() + v[1].norm_sqr()).sqrt()
}
