//! Declarative run configuration: a TOML file with `[system]`, `[bath]`,
//! `[sweep]` and `[numerics]` sections, plus `section.key=value` overrides.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::floquet::DEFAULT_STEPS;
use crate::model::{BathParams, SystemParams};
use crate::rates::DEFAULT_N_MAX;
use crate::sweep::{
    Axis, Parameter, PointOptions, SweepSpec, DEFAULT_P0_THRESHOLD, DEFAULT_RATIO_THRESHOLD,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SystemSection {
    pub h_x: f64,
    pub h_z0: f64,
    pub h_z1: f64,
    pub omega: f64,
    pub theta: f64,
}

impl Default for SystemSection {
    fn default() -> Self {
        SystemSection {
            h_x: 1.0,
            h_z0: 0.0,
            h_z1: 40.0,
            omega: 40.0,
            theta: std::f64::consts::FRAC_PI_2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BathSection {
    pub gamma: f64,
    pub omega_c: f64,
    pub temperature: f64,
}

impl Default for BathSection {
    fn default() -> Self {
        let b = BathParams::default();
        BathSection {
            gamma: b.gamma,
            omega_c: b.omega_c,
            temperature: b.temperature,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepSection {
    pub axis1: String,
    pub start: f64,
    pub end: f64,
    pub points: usize,
    pub axis2: Option<String>,
    pub axis2_start: f64,
    pub axis2_end: f64,
    pub axis2_points: usize,
    pub p0_threshold: f64,
    pub ratio_threshold: f64,
}

impl Default for SweepSection {
    fn default() -> Self {
        SweepSection {
            axis1: "h_z1".into(),
            start: 0.0,
            end: 240.0,
            points: 600,
            axis2: None,
            axis2_start: 0.0,
            axis2_end: std::f64::consts::FRAC_PI_2,
            axis2_points: 2,
            p0_threshold: DEFAULT_P0_THRESHOLD,
            ratio_threshold: DEFAULT_RATIO_THRESHOLD,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NumericsSection {
    pub n_steps: usize,
    pub n_max: usize,
    pub analytic: bool,
}

impl Default for NumericsSection {
    fn default() -> Self {
        NumericsSection {
            n_steps: DEFAULT_STEPS,
            n_max: DEFAULT_N_MAX,
            analytic: false,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Config {
    pub system: SystemSection,
    pub bath: BathSection,
    pub sweep: SweepSection,
    pub numerics: NumericsSection,
}

/// Interpret an override value as a TOML scalar, falling back to a string.
fn parse_value(raw: &str) -> toml::Value {
    toml::from_str::<toml::Table>(&format!("v = {raw}"))
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(raw.to_string()))
}

fn apply_override(table: &mut toml::Table, key: &str, raw: &str) -> Result<()> {
    let Some((section, field)) = key.split_once('.') else {
        return Err(Error::Configuration(format!(
            "override '{key}' must have the form section.key"
        )));
    };
    let entry = table
        .entry(section.to_string())
        .or_insert_with(|| toml::Value::Table(toml::Table::new()));
    let toml::Value::Table(inner) = entry else {
        return Err(Error::Configuration(format!("'{section}' is not a section")));
    };
    inner.insert(field.to_string(), parse_value(raw));
    Ok(())
}

impl Config {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        Self::with_overrides(text, &[])
    }

    /// Parse `text`, then apply `(section.key, value)` overrides in order.
    pub fn with_overrides(text: &str, overrides: &[(String, String)]) -> Result<Self> {
        let mut table: toml::Table =
            toml::from_str(text).map_err(|e| Error::Configuration(e.message().to_string()))?;
        for (key, value) in overrides {
            apply_override(&mut table, key, value)?;
        }
        toml::Value::Table(table)
            .try_into()
            .map_err(|e: toml::de::Error| Error::Configuration(e.message().to_string()))
    }

    pub fn load(path: Option<&Path>, overrides: &[(String, String)]) -> Result<Self> {
        let text = match path {
            Some(p) => std::fs::read_to_string(p).map_err(|e| {
                Error::Configuration(format!("cannot read {}: {e}", p.display()))
            })?,
            None => String::new(),
        };
        Self::with_overrides(&text, overrides)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn system_params(&self) -> Result<SystemParams> {
        let s = &self.system;
        SystemParams::new(s.h_x, s.h_z0, s.h_z1, s.omega, s.theta)
    }

    pub fn bath_params(&self) -> Result<BathParams> {
        let b = &self.bath;
        BathParams::new(b.gamma, b.omega_c, b.temperature)
    }

    pub fn point_options(&self) -> PointOptions {
        PointOptions {
            n_steps: self.numerics.n_steps,
            n_max: self.numerics.n_max,
            analytic: self.numerics.analytic,
        }
    }

    /// Base parameters are not validated here: swept values replace them
    /// point by point, and invalid points are reported per row.
    pub fn sweep_spec(&self) -> Result<SweepSpec> {
        let s = &self.system;
        let b = &self.bath;
        let w = &self.sweep;
        let system = SystemParams {
            h_x: s.h_x,
            h_z0: s.h_z0,
            h_z1: s.h_z1,
            omega: s.omega,
            theta: s.theta,
        };
        let bath = BathParams {
            gamma: b.gamma,
            omega_c: b.omega_c,
            temperature: b.temperature,
        };
        let axis1 = Axis::new(w.axis1.parse::<Parameter>()?, w.start, w.end, w.points);
        let axis2 = w
            .axis2
            .as_deref()
            .map(|name| -> Result<Axis> {
                Ok(Axis::new(
                    name.parse::<Parameter>()?,
                    w.axis2_start,
                    w.axis2_end,
                    w.axis2_points,
                ))
            })
            .transpose()?;
        let spec = SweepSpec {
            system,
            bath,
            axis1,
            axis2,
            options: self.point_options(),
            p0_threshold: w.p0_threshold,
            ratio_threshold: w.ratio_threshold,
        };
        spec.validate()?;
        Ok(spec)
    }
}
