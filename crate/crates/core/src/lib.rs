//! Floquet-Redfield simulation of a two-level system under a strong
//! longitudinal drive, coupled to an ohmic bath.
//!
//! Units: ħ = k_B = 1, energies measured in units of h_x.

pub mod analytic;
pub mod config;
pub mod error;
pub mod floquet;
pub mod model;
pub mod rates;
pub mod stationary;
pub mod sweep;
pub mod validation;

pub use error::{Error, Result};
pub use floquet::{solve, FloquetSolution};
pub use model::{BathParams, SystemParams};
pub use rates::{fourier_coefficients, rates, CouplingCoefficients, TransitionTable};
pub use stationary::{emission, solve_stationary, EmissionReport, StationaryState};
