//! Single-point evaluation, parameter sweeps with label continuation, jump
//! detection and CSV / metadata output.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{analytic_transition_elements, effective_hamiltonian, nearest_bessel_root};
use crate::error::{Error, Result};
use crate::floquet::{self, continue_labels, FloquetSolution, DEFAULT_STEPS};
use crate::model::{BathParams, SystemParams};
use crate::rates::{fourier_coefficients, rates, DEFAULT_N_MAX};
use crate::stationary::{emission, solve_stationary, EmissionReport};

pub const DEFAULT_P0_THRESHOLD: f64 = 0.01;
pub const DEFAULT_RATIO_THRESHOLD: f64 = 0.02;
pub const MIN_JUMP_POINTS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parameter {
    HX,
    HZ0,
    HZ1,
    Omega,
    Theta,
    Gamma,
    OmegaC,
    Temperature,
}

impl Parameter {
    pub const ALL: [Parameter; 8] = [
        Parameter::HX,
        Parameter::HZ0,
        Parameter::HZ1,
        Parameter::Omega,
        Parameter::Theta,
        Parameter::Gamma,
        Parameter::OmegaC,
        Parameter::Temperature,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Parameter::HX => "h_x",
            Parameter::HZ0 => "h_z0",
            Parameter::HZ1 => "h_z1",
            Parameter::Omega => "omega",
            Parameter::Theta => "theta",
            Parameter::Gamma => "gamma",
            Parameter::OmegaC => "omega_c",
            Parameter::Temperature => "temperature",
        }
    }

    pub fn get(self, system: &SystemParams, bath: &BathParams) -> f64 {
        match self {
            Parameter::HX => system.h_x,
            Parameter::HZ0 => system.h_z0,
            Parameter::HZ1 => system.h_z1,
            Parameter::Omega => system.omega,
            Parameter::Theta => system.theta,
            Parameter::Gamma => bath.gamma,
            Parameter::OmegaC => bath.omega_c,
            Parameter::Temperature => bath.temperature,
        }
    }

    pub fn set(self, system: &mut SystemParams, bath: &mut BathParams, value: f64) {
        match self {
            Parameter::HX => system.h_x = value,
            Parameter::HZ0 => system.h_z0 = value,
            Parameter::HZ1 => system.h_z1 = value,
            Parameter::Omega => system.omega = value,
            Parameter::Theta => system.theta = value,
            Parameter::Gamma => bath.gamma = value,
            Parameter::OmegaC => bath.omega_c = value,
            Parameter::Temperature => bath.temperature = value,
        }
    }
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Parameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Parameter::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Configuration(format!("unknown sweep parameter '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub parameter: Parameter,
    pub start: f64,
    pub end: f64,
    pub points: usize,
}

impl Axis {
    pub fn new(parameter: Parameter, start: f64, end: f64, points: usize) -> Self {
        Axis {
            parameter,
            start,
            end,
            points,
        }
    }

    /// Inclusive, evenly spaced samples; the last one is exactly `end`.
    pub fn values(&self) -> Vec<f64> {
        let last = self.points - 1;
        (0..self.points)
            .map(|i| {
                if i == last {
                    self.end
                } else {
                    self.start + (self.end - self.start) * i as f64 / last as f64
                }
            })
            .collect()
    }

    fn validate(&self, which: &str) -> Result<()> {
        if self.points < 2 {
            return Err(Error::Configuration(format!(
                "{which} needs at least 2 points, got {}",
                self.points
            )));
        }
        if !(self.start.is_finite() && self.end.is_finite()) {
            return Err(Error::Configuration(format!("{which} range must be finite")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointOptions {
    pub n_steps: usize,
    pub n_max: usize,
    /// Also evaluate the high-frequency predictions at each point.
    pub analytic: bool,
}

impl Default for PointOptions {
    fn default() -> Self {
        PointOptions {
            n_steps: DEFAULT_STEPS,
            n_max: DEFAULT_N_MAX,
            analytic: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticPoint {
    pub quasienergies: [f64; 2],
    /// |a^{(−1)}_{λ←μ}|² from the first-order expansion
    pub a2_minus1: [[f64; 2]; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointRecord {
    pub system: SystemParams,
    pub bath: BathParams,
    pub quasienergies: [f64; 2],
    pub gap: f64,
    pub degenerate: bool,
    /// Label continuation preferred exchanging the labels relative to the previous point.
    pub swapped: bool,
    pub populations: [f64; 2],
    /// [W_{0←1}, W_{1←0}]
    pub totals: [f64; 2],
    /// |a^{(−1)}_{λ←μ}|²
    pub a2_minus1: [[f64; 2]; 2],
    pub emission: EmissionReport,
    pub analytic: Option<AnalyticPoint>,
}

pub fn point_label(system: &SystemParams, bath: &BathParams) -> String {
    format!(
        "h_x={} h_z0={} h_z1={} omega={} theta={} gamma={} omega_c={} temperature={}",
        system.h_x,
        system.h_z0,
        system.h_z1,
        system.omega,
        system.theta,
        bath.gamma,
        bath.omega_c,
        bath.temperature
    )
}

fn solve_checked(system: &SystemParams, bath: &BathParams, n_steps: usize) -> Result<FloquetSolution> {
    system.validate()?;
    bath.validate()?;
    floquet::solve(system, n_steps)
}

fn analytic_point(system: &SystemParams) -> AnalyticPoint {
    let a = analytic_transition_elements(system, -1);
    AnalyticPoint {
        quasienergies: effective_hamiltonian(system).quasienergies,
        a2_minus1: [
            [a[0][0].norm_sqr(), a[0][1].norm_sqr()],
            [a[1][0].norm_sqr(), a[1][1].norm_sqr()],
        ],
    }
}

/// Rates, populations and intensities for an already labelled solution.
fn evaluate(
    system: &SystemParams,
    bath: &BathParams,
    solution: &FloquetSolution,
    swapped: bool,
    options: &PointOptions,
) -> Result<PointRecord> {
    let coefficients = fourier_coefficients(solution, system.theta, options.n_max)?;
    let table = rates(&coefficients, bath, solution)?;
    let state = solve_stationary(&table)?;
    let report = emission(&state, &table, solution);
    let a2 = |l, m| table.coefficient(l, m, -1).norm_sqr();
    Ok(PointRecord {
        system: *system,
        bath: *bath,
        quasienergies: solution.quasienergies,
        gap: solution.gap,
        degenerate: solution.degenerate,
        swapped,
        populations: state.populations,
        totals: [table.total(0, 1), table.total(1, 0)],
        a2_minus1: [[a2(0, 0), a2(0, 1)], [a2(1, 0), a2(1, 1)]],
        emission: report,
        analytic: options.analytic.then(|| analytic_point(system)),
    })
}

/// Evaluate one parameter point; labels are ordered by quasienergy.
pub fn run_point(
    system: &SystemParams,
    bath: &BathParams,
    options: &PointOptions,
) -> Result<PointRecord> {
    solve_checked(system, bath, options.n_steps)
        .and_then(|solution| evaluate(system, bath, &solution, false, options))
        .map_err(|e| e.at(point_label(system, bath)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub system: SystemParams,
    pub bath: BathParams,
    /// Label continuation runs along this axis.
    pub axis1: Axis,
    pub axis2: Option<Axis>,
    pub options: PointOptions,
    pub p0_threshold: f64,
    pub ratio_threshold: f64,
}

impl SweepSpec {
    pub fn new(system: SystemParams, bath: BathParams, axis1: Axis) -> Self {
        SweepSpec {
            system,
            bath,
            axis1,
            axis2: None,
            options: PointOptions::default(),
            p0_threshold: DEFAULT_P0_THRESHOLD,
            ratio_threshold: DEFAULT_RATIO_THRESHOLD,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.axis1.validate("axis1")?;
        if let Some(axis2) = &self.axis2 {
            axis2.validate("axis2")?;
            if axis2.parameter == self.axis1.parameter {
                return Err(Error::Configuration(format!(
                    "axis1 and axis2 both sweep '{}'",
                    axis2.parameter
                )));
            }
        }
        for (name, v) in [
            ("p0_threshold", self.p0_threshold),
            ("ratio_threshold", self.ratio_threshold),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::Configuration(format!(
                    "{name} must be finite and non-negative, got {v}"
                )));
            }
        }
        if self.options.n_steps < floquet::MIN_STEPS || !self.options.n_steps.is_multiple_of(2) {
            return Err(Error::Configuration(format!(
                "n_steps must be even and at least {}, got {}",
                floquet::MIN_STEPS,
                self.options.n_steps
            )));
        }
        if 4 * self.options.n_max > self.options.n_steps {
            return Err(Error::Configuration(format!(
                "n_max = {} exceeds n_steps/4 = {}",
                self.options.n_max,
                self.options.n_steps / 4
            )));
        }
        Ok(())
    }

    fn axis2_values(&self) -> Vec<Option<f64>> {
        match &self.axis2 {
            Some(a) => a.values().into_iter().map(Some).collect(),
            None => vec![None],
        }
    }

    /// Parameter points of one line along axis1.
    fn line(&self, v2: Option<f64>) -> Vec<(SystemParams, BathParams)> {
        self.axis1
            .values()
            .into_iter()
            .map(|v1| {
                let (mut s, mut b) = (self.system, self.bath);
                if let (Some(a2), Some(v2)) = (&self.axis2, v2) {
                    a2.parameter.set(&mut s, &mut b, v2);
                }
                self.axis1.parameter.set(&mut s, &mut b, v1);
                (s, b)
            })
            .collect()
    }

    pub fn point_count(&self) -> usize {
        self.axis1.points * self.axis2.map_or(1, |a| a.points)
    }
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub axis1_value: f64,
    pub axis2_value: Option<f64>,
    pub record: std::result::Result<PointRecord, Error>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootAnnotation {
    pub index: u32,
    /// z_k Ω
    pub amplitude: f64,
    /// |location − z_k Ω| / (z_k Ω)
    pub relative_distance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct JumpRecord {
    pub observable: String,
    pub axis2_value: Option<f64>,
    /// Midpoint of the flagged interval.
    pub location: f64,
    pub left_value: f64,
    pub right_value: f64,
    pub magnitude: f64,
    pub nearest_root: Option<RootAnnotation>,
}

impl JumpRecord {
    /// Annotate with the nearest CDT amplitude for an h_z1 axis at drive frequency `omega`.
    pub fn with_root(mut self, omega: f64) -> Self {
        let (index, z) = nearest_bessel_root(self.location / omega);
        let amplitude = z * omega;
        self.nearest_root = Some(RootAnnotation {
            index,
            amplitude,
            relative_distance: (self.location - amplitude).abs() / amplitude,
        });
        self
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    if v.is_empty() {
        return 0.0;
    }
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

/// Flag discontinuities in an ordered series.
///
/// Gap i (between samples i and i+1) is flagged when |Δy_i| exceeds
/// `threshold` plus five times the median of the six nearest non-flagged
/// gaps. Flags are iterated from "none flagged" to a fixed point.
pub fn detect_jumps(series: &[(f64, f64)], threshold: f64) -> Result<Vec<JumpRecord>> {
    if series.len() < MIN_JUMP_POINTS {
        return Err(Error::Domain(format!(
            "jump detection needs at least {MIN_JUMP_POINTS} points, got {}",
            series.len()
        )));
    }
    let gaps: Vec<f64> = series.windows(2).map(|w| (w[1].1 - w[0].1).abs()).collect();
    let mut flagged = vec![false; gaps.len()];
    for _ in 0..gaps.len() {
        let next: Vec<bool> = (0..gaps.len())
            .map(|i| gaps[i] > threshold + 5.0 * background(&gaps, &flagged, i))
            .collect();
        if next == flagged {
            break;
        }
        flagged = next;
    }
    Ok(flagged
        .iter()
        .enumerate()
        .filter(|(_, &f)| f)
        .map(|(i, _)| {
            let (left, right) = (series[i], series[i + 1]);
            JumpRecord {
                observable: String::new(),
                axis2_value: None,
                location: 0.5 * (left.0 + right.0),
                left_value: left.1,
                right_value: right.1,
                magnitude: gaps[i],
                nearest_root: None,
            }
        })
        .collect())
}

/// Median of the six gaps nearest to `i` that are not flagged.
fn background(gaps: &[f64], flagged: &[bool], i: usize) -> f64 {
    let mut neighbours = Vec::with_capacity(6);
    let mut d = 1;
    while neighbours.len() < 6 && (d <= i || i + d < gaps.len()) {
        for j in [i.checked_sub(d), Some(i + d)].into_iter().flatten() {
            if j < gaps.len() && !flagged[j] && neighbours.len() < 6 {
                neighbours.push(gaps[j]);
            }
        }
        d += 1;
    }
    median(neighbours)
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub spec: SweepSpec,
    /// Row-major: axis2 outer, axis1 inner.
    pub rows: Vec<SweepRow>,
    pub jumps: Vec<JumpRecord>,
}

impl SweepResult {
    pub fn failures(&self) -> impl Iterator<Item = (usize, &Error)> {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.record.as_ref().err().map(|e| (i, e)))
    }
}

/// Solve a line in parallel, then carry labels along it sequentially.
fn labelled_line(
    points: &[(SystemParams, BathParams)],
    n_steps: usize,
) -> Vec<Result<(FloquetSolution, bool)>> {
    let solved: Vec<Result<FloquetSolution>> = points
        .par_iter()
        .map(|(s, b)| solve_checked(s, b, n_steps))
        .collect();
    let mut previous: Option<FloquetSolution> = None;
    solved
        .into_iter()
        .map(|r| {
            let current = r?;
            let labelled = match &previous {
                Some(p) if p.omega == current.omega => {
                    let c = continue_labels(p, current)?;
                    (c.solution, c.swapped)
                }
                _ => (current, false),
            };
            previous = Some(labelled.0.clone());
            Ok(labelled)
        })
        .collect()
}

fn line_jumps(
    spec: &SweepSpec,
    rows: &[SweepRow],
    v2: Option<f64>,
    omega: f64,
) -> Vec<JumpRecord> {
    let p0: Vec<(f64, f64)> = rows
        .iter()
        .filter_map(|r| r.record.as_ref().ok().map(|rec| (r.axis1_value, rec.populations[0])))
        .collect();
    let ratio: Vec<(f64, f64)> = rows
        .iter()
        .filter_map(|r| {
            let rec = r.record.as_ref().ok()?;
            rec.emission.ratio.map(|q| (r.axis1_value, q))
        })
        .collect();
    let mut out = Vec::new();
    for (name, series, threshold) in [
        ("p0", p0, spec.p0_threshold),
        ("ratio", ratio, spec.ratio_threshold),
    ] {
        let Ok(found) = detect_jumps(&series, threshold) else {
            continue;
        };
        for mut j in found {
            j.observable = name.to_string();
            j.axis2_value = v2;
            if spec.axis1.parameter == Parameter::HZ1 {
                j = j.with_root(omega);
            }
            out.push(j);
        }
    }
    out
}

/// Evaluate the grid. Point failures are recorded per row; only an invalid
/// spec is an error.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let mut rows = Vec::with_capacity(spec.point_count());
    let mut jumps = Vec::new();
    let axis1_values = spec.axis1.values();
    for v2 in spec.axis2_values() {
        let points = spec.line(v2);
        let labelled = labelled_line(&points, spec.options.n_steps);
        let records: Vec<Result<PointRecord>> = points
            .par_iter()
            .zip(labelled.into_par_iter())
            .map(|((s, b), lab)| {
                lab.and_then(|(sol, swapped)| evaluate(s, b, &sol, swapped, &spec.options))
                    .map_err(|e| e.at(point_label(s, b)))
            })
            .collect();
        let line: Vec<SweepRow> = axis1_values
            .iter()
            .zip(records)
            .map(|(&v1, record)| SweepRow {
                axis1_value: v1,
                axis2_value: v2,
                record,
            })
            .collect();
        let omega = points[0].0.omega;
        jumps.extend(line_jumps(spec, &line, v2, omega));
        rows.extend(line);
    }
    Ok(SweepResult {
        spec: spec.clone(),
        rows,
        jumps,
    })
}

#[derive(Debug, Clone)]
pub struct SpectrumRow {
    pub axis1_value: f64,
    pub axis2_value: Option<f64>,
    pub system: SystemParams,
    pub solution: std::result::Result<([f64; 2], bool, bool), Error>,
    pub predicted: Option<[f64; 2]>,
}

/// Quasienergies only: the rate stage is skipped.
pub fn run_spectrum(spec: &SweepSpec) -> Result<Vec<SpectrumRow>> {
    spec.validate()?;
    let axis1_values = spec.axis1.values();
    let mut out = Vec::with_capacity(spec.point_count());
    for v2 in spec.axis2_values() {
        let points = spec.line(v2);
        let labelled = labelled_line(&points, spec.options.n_steps);
        for ((&v1, (s, b)), lab) in axis1_values.iter().zip(&points).zip(labelled) {
            out.push(SpectrumRow {
                axis1_value: v1,
                axis2_value: v2,
                system: *s,
                solution: lab
                    .map(|(sol, swapped)| (sol.quasienergies, sol.degenerate, swapped))
                    .map_err(|e| e.at(point_label(s, b))),
                predicted: spec
                    .options
                    .analytic
                    .then(|| effective_hamiltonian(s).quasienergies),
            });
        }
    }
    Ok(out)
}

/// 17 significant digits, `nan`/`inf` spelled out.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// Leading parameter columns: any swept parameter other than h_z1/θ, then h_z1, θ.
fn parameter_columns(spec: &SweepSpec) -> Vec<Parameter> {
    let mut cols: Vec<Parameter> = [Some(spec.axis1), spec.axis2]
        .into_iter()
        .flatten()
        .map(|a| a.parameter)
        .filter(|p| !matches!(p, Parameter::HZ1 | Parameter::Theta))
        .collect();
    cols.extend([Parameter::HZ1, Parameter::Theta]);
    cols
}

fn point_parameters(spec: &SweepSpec, axis1: f64, axis2: Option<f64>) -> (SystemParams, BathParams) {
    let (mut s, mut b) = (spec.system, spec.bath);
    if let (Some(a2), Some(v2)) = (&spec.axis2, axis2) {
        a2.parameter.set(&mut s, &mut b, v2);
    }
    spec.axis1.parameter.set(&mut s, &mut b, axis1);
    (s, b)
}

pub const SWEEP_COLUMNS: [&str; 17] = [
    "eps0",
    "eps1",
    "gap",
    "p0",
    "p1",
    "W_01",
    "W_10",
    "a2_n-1_10",
    "a2_n-1_01",
    "I_b",
    "I_r",
    "I_0",
    "ratio",
    "ratio_defined",
    "degenerate",
    "swapped",
    "status",
];

pub const ANALYTIC_COLUMNS: [&str; 4] = ["eps0_hf", "eps1_hf", "a2_n-1_10_hf", "a2_n-1_01_hf"];

pub fn write_sweep_csv<W: Write>(result: &SweepResult, mut out: W) -> io::Result<()> {
    let spec = &result.spec;
    let params = parameter_columns(spec);
    let mut header: Vec<&str> = params.iter().map(|p| p.name()).collect();
    header.extend(SWEEP_COLUMNS);
    if spec.options.analytic {
        header.extend(ANALYTIC_COLUMNS);
    }
    writeln!(out, "{}", header.join(","))?;

    let nan = f64::NAN;
    for row in &result.rows {
        let (s, b) = point_parameters(spec, row.axis1_value, row.axis2_value);
        let mut fields: Vec<String> = params.iter().map(|p| format_float(p.get(&s, &b))).collect();
        match &row.record {
            Ok(r) => {
                let e = &r.emission;
                for v in [
                    r.quasienergies[0],
                    r.quasienergies[1],
                    r.gap,
                    r.populations[0],
                    r.populations[1],
                    r.totals[0],
                    r.totals[1],
                    r.a2_minus1[1][0],
                    r.a2_minus1[0][1],
                    e.intensity_blue,
                    e.intensity_red,
                    e.intensity_unshifted,
                    e.ratio.unwrap_or(nan),
                ] {
                    fields.push(format_float(v));
                }
                fields.push(u8::from(e.ratio.is_some()).to_string());
                fields.push(u8::from(r.degenerate).to_string());
                fields.push(u8::from(r.swapped).to_string());
                fields.push("ok".to_string());
                if let Some(a) = &r.analytic {
                    for v in [
                        a.quasienergies[0],
                        a.quasienergies[1],
                        a.a2_minus1[1][0],
                        a.a2_minus1[0][1],
                    ] {
                        fields.push(format_float(v));
                    }
                }
            }
            Err(err) => {
                fields.extend(std::iter::repeat_n("nan".to_string(), 13));
                fields.extend(["0", "0", "0"].map(String::from));
                fields.push(err.kind().to_string());
                if spec.options.analytic {
                    fields.extend(std::iter::repeat_n("nan".to_string(), 4));
                }
            }
        }
        writeln!(out, "{}", fields.join(","))?;
    }
    Ok(())
}

pub fn write_spectrum_csv<W: Write>(
    spec: &SweepSpec,
    rows: &[SpectrumRow],
    mut out: W,
) -> io::Result<()> {
    let params = parameter_columns(spec);
    let mut header: Vec<&str> = params.iter().map(|p| p.name()).collect();
    header.extend(["eps0", "eps1", "gap", "degenerate", "swapped", "status"]);
    if spec.options.analytic {
        header.extend(["eps0_hf", "eps1_hf"]);
    }
    writeln!(out, "{}", header.join(","))?;
    for row in rows {
        let (s, b) = point_parameters(spec, row.axis1_value, row.axis2_value);
        let mut fields: Vec<String> = params.iter().map(|p| format_float(p.get(&s, &b))).collect();
        match &row.solution {
            Ok((q, degenerate, swapped)) => {
                fields.extend([q[0], q[1], q[1] - q[0]].map(format_float));
                fields.push(u8::from(*degenerate).to_string());
                fields.push(u8::from(*swapped).to_string());
                fields.push("ok".to_string());
            }
            Err(err) => {
                fields.extend(["nan", "nan", "nan", "0", "0"].map(String::from));
                fields.push(err.kind().to_string());
            }
        }
        if let Some(p) = row.predicted {
            fields.extend(p.map(format_float));
        }
        writeln!(out, "{}", fields.join(","))?;
    }
    Ok(())
}

fn write_axis<W: Write>(out: &mut W, key: &str, axis: &Axis) -> io::Result<()> {
    writeln!(out, "sweep.{key}.parameter={}", axis.parameter)?;
    writeln!(out, "sweep.{key}.start={}", format_float(axis.start))?;
    writeln!(out, "sweep.{key}.end={}", format_float(axis.end))?;
    writeln!(out, "sweep.{key}.points={}", axis.points)
}

/// key=value sidecar describing the run. `jumps` may be empty (spectrum runs).
pub fn write_metadata<W: Write>(
    spec: &SweepSpec,
    jumps: &[JumpRecord],
    failures: &[(usize, String)],
    mut out: W,
) -> io::Result<()> {
    let o = &mut out;
    writeln!(o, "tool={}", env!("CARGO_PKG_NAME"))?;
    writeln!(o, "version={}", env!("CARGO_PKG_VERSION"))?;
    writeln!(o, "units=hbar=k_B=1, energies in units of h_x")?;
    let s = &spec.system;
    let b = &spec.bath;
    for (k, v) in [
        ("system.h_x", s.h_x),
        ("system.h_z0", s.h_z0),
        ("system.h_z1", s.h_z1),
        ("system.omega", s.omega),
        ("system.theta", s.theta),
        ("bath.gamma", b.gamma),
        ("bath.omega_c", b.omega_c),
        ("bath.temperature", b.temperature),
    ] {
        writeln!(o, "{k}={}", format_float(v))?;
    }
    write_axis(o, "axis1", &spec.axis1)?;
    if let Some(a) = &spec.axis2 {
        write_axis(o, "axis2", a)?;
    }
    writeln!(o, "sweep.p0_threshold={}", format_float(spec.p0_threshold))?;
    writeln!(o, "sweep.ratio_threshold={}", format_float(spec.ratio_threshold))?;
    writeln!(o, "numerics.n_steps={}", spec.options.n_steps)?;
    writeln!(o, "numerics.n_max={}", spec.options.n_max)?;
    writeln!(o, "numerics.analytic={}", spec.options.analytic)?;
    writeln!(o, "column.I_0=extension: Omega*(A00*p0 + A11*p1), unshifted line from diagonal channels")?;
    writeln!(o, "column.ratio=I_r/I_b; nan with ratio_defined=0 when I_b=0")?;
    writeln!(o, "points.total={}", spec.point_count())?;
    writeln!(o, "points.failed={}", failures.len())?;
    for (i, msg) in failures {
        writeln!(o, "failure.{i}={msg}")?;
    }
    writeln!(o, "jumps.count={}", jumps.len())?;
    for (i, j) in jumps.iter().enumerate() {
        writeln!(o, "jump.{i}.observable={}", j.observable)?;
        if let Some(v2) = j.axis2_value {
            writeln!(o, "jump.{i}.axis2={}", format_float(v2))?;
        }
        writeln!(o, "jump.{i}.location={}", format_float(j.location))?;
        writeln!(o, "jump.{i}.left={}", format_float(j.left_value))?;
        writeln!(o, "jump.{i}.right={}", format_float(j.right_value))?;
        writeln!(o, "jump.{i}.magnitude={}", format_float(j.magnitude))?;
        if let Some(r) = &j.nearest_root {
            writeln!(o, "jump.{i}.root_index={}", r.index)?;
            writeln!(o, "jump.{i}.root_amplitude={}", format_float(r.amplitude))?;
            writeln!(o, "jump.{i}.root_relative_distance={}", format_float(r.relative_distance))?;
        }
    }
    Ok(())
}
