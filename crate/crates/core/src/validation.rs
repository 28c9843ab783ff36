//! Acceptance checks, shared by the `validate` subcommand and the acceptance
//! test target. Every tolerance here is fixed; nothing is tuned per run.

use std::f64::consts::PI;
use std::fmt;
use std::path::Path;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analytic::{analytic_transition_elements, bessel_j, bessel_root};
use crate::error::Result;
use crate::floquet::{self, FloquetSolution, DEFAULT_STEPS};
use crate::model::{coupling_operator, inner, BathParams, SystemParams};
use crate::rates::{
    fourier_coefficients, full_spectrum, matrix_element_series, rates,
    spectral_density, TransitionTable,
};
use crate::stationary::{density_matrix, emission, solve_stationary, StationaryState};
use crate::sweep::{
    detect_jumps, run_point, run_sweep, write_metadata, write_sweep_csv, Axis, Parameter,
    PointOptions, SweepResult, SweepSpec,
};

pub const SEED: u64 = 0x5eed_f10c;
pub const OMEGA: f64 = 40.0;

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub value: f64,
    /// Human-readable bound, e.g. "<= 1e-3".
    pub bound: String,
    pub passed: bool,
}

impl Check {
    fn at_most(name: impl Into<String>, value: f64, limit: f64) -> Check {
        Check {
            name: name.into(),
            value,
            bound: format!("<= {limit:e}"),
            passed: value <= limit,
        }
    }

    fn greater(name: impl Into<String>, value: f64, limit: f64) -> Check {
        Check {
            name: name.into(),
            value,
            bound: format!("> {limit:e}"),
            passed: value > limit,
        }
    }

    fn within(name: impl Into<String>, value: f64, lo: f64, hi: f64) -> Check {
        Check {
            name: name.into(),
            value,
            bound: format!("in [{lo}, {hi}]"),
            passed: (lo..=hi).contains(&value),
        }
    }

    fn runtime(elapsed: Duration, limit_s: f64) -> Check {
        Check::at_most("runtime_s", elapsed.as_secs_f64(), limit_s)
    }

    fn failed_with(name: impl Into<String>, err: &crate::Error) -> Check {
        Check {
            name: format!("{} ({err})", name.into()),
            value: f64::NAN,
            bound: "no error".into(),
            passed: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {} {}:",
            self.id,
            if self.passed() { "PASS" } else { "FAIL" },
            self.title
        )?;
        for (i, c) in self.checks.iter().enumerate() {
            let sep = if i == 0 { " " } else { "; " };
            let mark = if c.passed { "" } else { " [x]" };
            write!(f, "{sep}{}={:.4e} {}{mark}", c.name, c.value, c.bound)?;
        }
        write!(f, " ({:.2} s)", self.elapsed.as_secs_f64())
    }
}

fn timed(id: u8, title: &'static str, body: impl FnOnce() -> Vec<Check>) -> CriterionReport {
    let start = Instant::now();
    let checks = body();
    CriterionReport {
        id,
        title,
        checks,
        elapsed: start.elapsed(),
    }
}

fn system(h_z1: f64, theta: f64) -> SystemParams {
    SystemParams {
        h_x: 1.0,
        h_z0: 0.0,
        h_z1,
        omega: OMEGA,
        theta,
    }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    Axis::new(Parameter::HZ1, a, b, n).values()
}

/// Interior samples of the open interval (a, b).
fn open_interval(a: f64, b: f64, n: usize) -> Vec<f64> {
    let v = linspace(a, b, n + 2);
    v[1..=n].to_vec()
}

struct Point {
    solution: FloquetSolution,
    table: TransitionTable,
    state: StationaryState,
}

fn evaluate(params: &SystemParams, bath: &BathParams, n_steps: usize) -> Result<Point> {
    let solution = floquet::solve(params, n_steps)?;
    let c = fourier_coefficients(&solution, params.theta, 3)?;
    let table = rates(&c, bath, &solution)?;
    let state = solve_stationary(&table)?;
    Ok(Point {
        solution,
        table,
        state,
    })
}

pub fn static_gibbs() -> CriterionReport {
    timed(1, "static Gibbs populations", || {
        let start = Instant::now();
        let p = system(0.0, PI / 4.0);
        match run_point(&p, &BathParams::default(), &PointOptions::default()) {
            Ok(r) => {
                let ratio = r.populations[1] / r.populations[0];
                vec![
                    Check::at_most("|p1/p0-e^(-1/3)|", (ratio - (-1.0f64 / 3.0).exp()).abs(), 1e-3),
                    Check::runtime(start.elapsed(), 1.0),
                ]
            }
            Err(e) => vec![Check::failed_with("point", &e)],
        }
    })
}

/// Golden-section minimum of `f` on [a, b].
fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

pub fn quasienergy_law() -> CriterionReport {
    timed(2, "quasienergy law and CDT gap minima", || {
        let start = Instant::now();
        let zs = linspace(0.0, 6.0, 300);
        let solved: Vec<Result<FloquetSolution>> = zs
            .iter()
            .map(|z| floquet::solve(&system(z * OMEGA, PI / 2.0), DEFAULT_STEPS))
            .collect();
        let mut worst = 0.0f64;
        let mut gaps = Vec::with_capacity(zs.len());
        for (z, s) in zs.iter().zip(&solved) {
            let s = match s {
                Ok(s) => s,
                Err(e) => return vec![Check::failed_with("solve", e)],
            };
            let half = 0.5 * bessel_j(0, *z).unwrap().abs();
            worst = worst
                .max((s.quasienergies[0] + half).abs())
                .max((s.quasienergies[1] - half).abs());
            gaps.push(s.gap);
        }
        let mut checks = vec![Check::at_most("max|eps-(+-)J0/2|", worst, 0.01)];

        // z_3 = 8.65 lies beyond 6: the minima search continues the grid to 9
        let step = zs[1] - zs[0];
        let mut zs = zs;
        while *zs.last().unwrap() < 9.0 {
            let z = zs.last().unwrap() + step;
            match floquet::solve(&system(z * OMEGA, PI / 2.0), DEFAULT_STEPS) {
                Ok(s) => gaps.push(s.gap),
                Err(e) => return vec![Check::failed_with("solve", &e)],
            }
            zs.push(z);
        }

        let gap_at = |h_z1: f64| {
            floquet::solve(&system(h_z1, PI / 2.0), DEFAULT_STEPS)
                .map(|s| s.gap)
                .unwrap_or(f64::INFINITY)
        };
        let minima: Vec<usize> = (1..gaps.len() - 1)
            .filter(|&i| gaps[i] <= gaps[i - 1] && gaps[i] <= gaps[i + 1])
            .collect();
        for k in 1..=3u32 {
            let target = bessel_root(k) * OMEGA;
            let Some(&i) = minima.iter().min_by(|&&a, &&b| {
                (zs[a] * OMEGA - target)
                    .abs()
                    .total_cmp(&(zs[b] * OMEGA - target).abs())
            }) else {
                checks.push(Check::at_most(format!("z{k} minimum found"), f64::NAN, 0.0));
                continue;
            };
            let x = golden_min(gap_at, zs[i - 1] * OMEGA, zs[i + 1] * OMEGA, 1e-6 * target);
            checks.push(Check::at_most(
                format!("z{k}_rel_offset"),
                (x - target).abs() / target,
                2e-3,
            ));
        }
        checks.push(Check::runtime(start.elapsed(), 30.0));
        checks
    })
}

fn random_point(rng: &mut ChaCha8Rng) -> (SystemParams, BathParams) {
    let omega = rng.gen_range(20.0..80.0);
    let s = SystemParams {
        h_x: 1.0,
        h_z0: rng.gen_range(-0.5..0.5),
        h_z1: rng.gen_range(0.0..6.0) * omega,
        omega,
        theta: rng.gen_range(0.0..PI),
    };
    let b = BathParams {
        gamma: rng.gen_range(1e-3..0.1),
        omega_c: rng.gen_range(2.0..20.0),
        temperature: rng.gen_range(0.5..5.0),
    };
    (s, b)
}

pub fn detailed_balance() -> CriterionReport {
    timed(3, "per-channel detailed balance", || {
        let start = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let mut worst = 0.0f64;
        for _ in 0..50 {
            let (s, b) = random_point(&mut rng);
            let point = match evaluate(&s, &b, DEFAULT_STEPS) {
                Ok(p) => p,
                Err(e) => return vec![Check::failed_with("point", &e)],
            };
            let t = &point.table;
            // rebuilt as Γ(Δ)/(1 − e^{−Δ/T}) rather than read from the stored rates
            let rate = |l: usize, m: usize, n: i64| {
                let d = t.energy_gap(l, m, n);
                let pref = if d == 0.0 {
                    b.gamma * b.temperature / (b.omega_c * b.omega_c)
                } else {
                    spectral_density(d, &b) / -(-d / b.temperature).exp_m1()
                };
                pref * t.coefficient(l, m, n).norm_sqr()
            };
            for n in t.orders() {
                for l in 0..2 {
                    for m in 0..2 {
                        let forward = rate(l, m, n);
                        let backward = rate(m, l, -n) * (t.energy_gap(l, m, n) / b.temperature).exp();
                        let scale = forward.abs().max(backward.abs());
                        if scale > 0.0 {
                            worst = worst.max((forward - backward).abs() / scale);
                        }
                    }
                }
            }
        }
        vec![
            Check::at_most("max_rel_violation", worst, 1e-8),
            Check::runtime(start.elapsed(), 30.0),
        ]
    })
}

pub fn generalized_parity() -> CriterionReport {
    timed(4, "generalized parity selection rule", || {
        let mut worst = 0.0f64;
        for z in linspace(0.0, 6.0, 300) {
            let p = system(z * OMEGA, PI / 2.0);
            let r = floquet::solve(&p, DEFAULT_STEPS)
                .and_then(|s| fourier_coefficients(&s, p.theta, 1));
            match r {
                Ok(c) => worst = worst.max(c.get(1, 0, 0).norm()),
                Err(e) => return vec![Check::failed_with("solve", &e)],
            }
        }
        vec![Check::at_most("max|a0_10|", worst, 1e-8)]
    })
}

fn frobenius_distance(a: &crate::model::SpinOperator, b: &crate::model::SpinOperator) -> f64 {
    let d = *a - *b;
    d.0.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn probability_jump() -> CriterionReport {
    timed(5, "population inversion and jump at CDT", || {
        let bath = BathParams::default();
        let mut min_excess = f64::INFINITY;
        for z in open_interval(0.2, 2.2, 40) {
            match evaluate(&system(z * OMEGA, PI / 2.0), &bath, DEFAULT_STEPS) {
                Ok(p) => min_excess = min_excess.min(p.state.populations[1] - p.state.populations[0]),
                Err(e) => return vec![Check::failed_with("inversion", &e)],
            }
        }
        let root = bessel_root(1) * OMEGA;
        let delta = 0.01 * OMEGA;
        let sides = (
            evaluate(&system(root - delta, PI / 2.0), &bath, DEFAULT_STEPS),
            evaluate(&system(root + delta, PI / 2.0), &bath, DEFAULT_STEPS),
        );
        let (left, right) = match sides {
            (Ok(l), Ok(r)) => (l, r),
            (Err(e), _) | (_, Err(e)) => return vec![Check::failed_with("sides", &e)],
        };
        let jump = (right.state.populations[0] - left.state.populations[0]).abs();
        let swap = (right.state.populations[0] - left.state.populations[1]).abs();
        let rho_l = density_matrix(left.state, &left.solution);
        let rho_r = density_matrix(right.state, &right.solution);
        let continuity = rho_l
            .density_matrix
            .iter()
            .zip(&rho_r.density_matrix)
            .map(|(a, b)| frobenius_distance(a, b))
            .fold(0.0, f64::max);
        vec![
            Check::greater("min(p1-p0) on (0.2,2.2)", min_excess, 0.0),
            Check::greater("|p0(+)-p0(-)|", jump, 0.1),
            Check::at_most("|p0(+)-p1(-)|", swap, 0.02),
            Check::at_most("max||rho+ - rho-||", continuity, 0.02),
        ]
    })
}

/// Ratio jump detected by a fine sweep across z_1 Ω.
fn detected_ratio_jump(omega: f64) -> Result<Option<(f64, f64)>> {
    let root = bessel_root(1) * omega;
    let mut spec = SweepSpec::new(
        SystemParams {
            h_x: 1.0,
            h_z0: 0.0,
            h_z1: root,
            omega,
            theta: PI / 4.0,
        },
        BathParams::default(),
        Axis::new(Parameter::HZ1, root - 0.05 * omega, root + 0.05 * omega, 40),
    );
    spec.options.n_steps = DEFAULT_STEPS;
    let result = run_sweep(&spec)?;
    if let Some((_, e)) = result.failures().next() {
        return Err(e.clone());
    }
    let step = 0.1 * omega / 39.0;
    Ok(result
        .jumps
        .iter()
        .filter(|j| j.observable == "ratio" && (j.location - root).abs() <= step)
        .map(|j| (j.location, j.magnitude))
        .next())
}

pub fn ratio_jump() -> CriterionReport {
    timed(6, "intensity-ratio jump and 1/Omega scaling", || {
        let (j40, j80) = match (detected_ratio_jump(40.0), detected_ratio_jump(80.0)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return vec![Check::failed_with("sweep", &e)],
        };
        let (Some((_, m40)), Some((_, m80))) = (j40, j80) else {
            return vec![Check::greater(
                "jumps detected at z1*Omega (40, 80)",
                (j40.is_some() as u8 + j80.is_some() as u8) as f64,
                1.0,
            )];
        };
        vec![
            Check::within("jump(40)", m40, 0.05, 0.15),
            Check::within("jump(80)/(jump(40)/2)", m80 / (0.5 * m40), 0.85, 1.15),
        ]
    })
}

pub fn floquet_gibbs_limit() -> CriterionReport {
    timed(7, "theta=0 Floquet-Gibbs limit", || {
        let bath = BathParams::default();
        let mut worst_ratio = 0.0f64;
        let mut worst_intensity = 0.0f64;
        for z in linspace(0.0, 6.0, 121) {
            let p = system(z * OMEGA, 0.0);
            match evaluate(&p, &bath, DEFAULT_STEPS) {
                Ok(pt) => {
                    let [p0, p1] = pt.state.populations;
                    let gibbs = (pt.solution.gap / bath.temperature).exp();
                    worst_ratio = worst_ratio.max((p0 / p1 - gibbs).abs());
                    let e = emission(&pt.state, &pt.table, &pt.solution);
                    worst_intensity = worst_intensity.max(e.intensity_blue).max(e.intensity_red);
                }
                Err(e) => return vec![Check::failed_with("point", &e)],
            }
        }
        vec![
            Check::at_most("max|p0/p1-e^(D/T)|", worst_ratio, 0.02),
            Check::at_most("max(I_b,I_r)/(gamma*Omega)", worst_intensity / (bath.gamma * OMEGA), 1e-6),
        ]
    })
}

/// Largest |a_analytic − a_numeric| for n ∈ {0, −1}, three angles, z ∈ [0, 6].
pub fn max_coefficient_deviation(omega: f64) -> Result<f64> {
    let mut worst = 0.0f64;
    for theta in [0.0, PI / 4.0, PI / 2.0] {
        for z in linspace(0.0, 6.0, 121) {
            let p = SystemParams {
                h_x: 1.0,
                h_z0: 0.0,
                h_z1: z * omega,
                omega,
                theta,
            };
            let s = floquet::solve(&p, DEFAULT_STEPS)?;
            let c = fourier_coefficients(&s, theta, 1)?;
            for n in [0i32, -1] {
                let a = analytic_transition_elements(&p, n);
                for l in 0..2 {
                    for m in 0..2 {
                        worst = worst.max((a[l][m] - c.get(l, m, n as i64)).norm());
                    }
                }
            }
        }
    }
    Ok(worst)
}

pub fn analytic_agreement() -> CriterionReport {
    timed(8, "analytic vs numeric transition coefficients", || {
        match (max_coefficient_deviation(40.0), max_coefficient_deviation(80.0)) {
            (Ok(d40), Ok(d80)) => vec![
                Check::at_most("max_dev(40)", d40, 5e-3),
                Check::within("max_dev(40)/max_dev(80)", d40 / d80, 1.5, 3.0),
            ],
            (Err(e), _) | (_, Err(e)) => vec![Check::failed_with("deviation", &e)],
        }
    })
}

fn property_checks(s: &SystemParams, b: &BathParams) -> Result<[f64; 5]> {
    let grid = floquet::propagate_period(s, DEFAULT_STEPS)?;
    let unitarity = grid
        .propagators
        .iter()
        .map(|u| u.unitarity_error())
        .fold(0.0, f64::max);
    let sol = floquet::diagonalize_monodromy(&grid, s.omega)?;

    let mut ortho = 0.0f64;
    for pair in &sol.modes {
        for l in 0..2 {
            for m in 0..2 {
                let target = if l == m { 1.0 } else { 0.0 };
                ortho = ortho.max((inner(&pair[l], &pair[m]) - target).norm());
            }
        }
    }
    let last = sol.modes[sol.n_steps];
    for l in 0..2 {
        for c in 0..2 {
            ortho = ortho.max((last[l][c] - sol.modes[0][l][c]).norm());
        }
    }

    let series = matrix_element_series(&sol, &coupling_operator(s.theta));
    let mut parseval = 0.0f64;
    for row in &series {
        for m in row {
            let time_avg = m.iter().map(|z| z.norm_sqr()).sum::<f64>() / m.len() as f64;
            let freq_sum: f64 = full_spectrum(m).iter().map(|z| z.norm_sqr()).sum();
            parseval = parseval.max((time_avg - freq_sum).abs());
        }
    }

    let base = evaluate(s, b, DEFAULT_STEPS)?;
    let scaled_bath = BathParams {
        gamma: b.gamma * 7.3,
        ..*b
    };
    let scaled = evaluate(s, &scaled_bath, DEFAULT_STEPS)?;
    let e0 = emission(&base.state, &base.table, &base.solution);
    let e1 = emission(&scaled.state, &scaled.table, &scaled.solution);
    let mut gamma_dev = (base.state.populations[0] - scaled.state.populations[0]).abs();
    for (x, y) in [
        (e0.intensity_blue, e1.intensity_blue),
        (e0.intensity_red, e1.intensity_red),
    ] {
        if x > 0.0 {
            gamma_dev = gamma_dev.max((y / (7.3 * x) - 1.0).abs());
        }
    }

    let fine = floquet::solve(s, 2 * DEFAULT_STEPS)?;
    let doubling = (0..2)
        .map(|l| (fine.quasienergies[l] - sol.quasienergies[l]).abs())
        .fold(0.0, f64::max);
    Ok([unitarity, ortho, parseval, gamma_dev, doubling])
}

pub fn property_suite() -> CriterionReport {
    timed(9, "numerical property suite", || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
        let mut worst = [0.0f64; 5];
        let mut points: Vec<(SystemParams, BathParams)> = vec![
            (system(OMEGA, PI / 2.0), BathParams::default()),
            (system(bessel_root(1) * OMEGA, PI / 4.0), BathParams::default()),
        ];
        points.extend((0..10).map(|_| random_point(&mut rng)));
        for (s, b) in &points {
            match property_checks(s, b) {
                Ok(v) => {
                    for (w, x) in worst.iter_mut().zip(v) {
                        *w = w.max(x);
                    }
                }
                Err(e) => return vec![Check::failed_with("point", &e)],
            }
        }
        vec![
            Check::at_most("unitarity", worst[0], 1e-10),
            Check::at_most("orthonormality/periodicity", worst[1], 1e-8),
            Check::at_most("parseval", worst[2], 1e-10),
            Check::at_most("gamma_rescaling", worst[3], 1e-12),
            Check::at_most("grid_doubling", worst[4], 1e-8),
        ]
    })
}

/// One-sided limits at `x0` by linear extrapolation from the two samples on each side.
fn extrapolated_jump(xs: &[f64], ys: &[f64], x0: f64) -> Option<f64> {
    let i = xs.iter().rposition(|&x| x < x0)?;
    if i < 1 || i + 2 >= xs.len() {
        return None;
    }
    let line = |a: usize, b: usize| ys[b] + (ys[b] - ys[a]) * (x0 - xs[b]) / (xs[b] - xs[a]);
    Some((line(i + 2, i + 1) - line(i - 1, i)).abs())
}

/// Full 200×200 map over θ ∈ [0, π/2] × h_z1/Ω ∈ [0, 6].
pub fn figure_spec(points: usize) -> SweepSpec {
    let mut spec = SweepSpec::new(system(0.0, 0.0), BathParams::default(), Axis::new(
        Parameter::HZ1,
        0.0,
        6.0 * OMEGA,
        points,
    ));
    spec.axis2 = Some(Axis::new(Parameter::Theta, 0.0, PI / 2.0, points));
    spec
}

fn figure_checks(result: &SweepResult, elapsed: Duration) -> Vec<Check> {
    let spec = &result.spec;
    let n1 = spec.axis1.points;
    let thetas = spec.axis2.expect("2D figure sweep").values();
    let step = (spec.axis1.end - spec.axis1.start) / (n1 - 1) as f64;
    // σ_x coupling without drive commutes with H: nothing relaxes at that corner
    let undefined = |r: &crate::sweep::SweepRow| {
        matches!(&r.record, Err(e) if e.kind() == "no_relaxation")
            && r.axis1_value == 0.0
            && r.axis2_value == Some(PI / 2.0)
    };
    let failures = result.rows.iter().filter(|r| r.record.is_err() && !undefined(r)).count();
    let mut checks = vec![Check::at_most("failed_points (excluding h_z1=0, theta=pi/2)", failures as f64, 0.0)];
    if failures > 0 {
        return checks;
    }
    let rows: Vec<Vec<_>> = result
        .rows
        .chunks(n1)
        .map(|line| line.iter().filter(|r| r.record.is_ok()).collect())
        .collect();
    let rec = |r: &crate::sweep::SweepRow| r.record.as_ref().unwrap().clone();

    // inversion near θ = π/2, small drive
    let top = rows.last().unwrap();
    let max_p0 = top
        .iter()
        .filter(|r| {
            let z = r.axis1_value / OMEGA;
            z > 0.2 && z < 2.2
        })
        .map(|r| rec(r).populations[0])
        .fold(f64::NEG_INFINITY, f64::max);
    checks.push(Check::at_most("max p0 (theta=pi/2, z in (0.2,2.2))", max_p0, 0.5));

    // ridges: p0 jumps within one grid step of z_1 Ω and z_2 Ω for θ ≥ 0.4π
    let mut missing = 0usize;
    for (row, &theta) in rows.iter().zip(&thetas) {
        if theta < 0.4 * PI {
            continue;
        }
        let series: Vec<(f64, f64)> = row.iter().map(|r| (r.axis1_value, rec(r).populations[0])).collect();
        let jumps = detect_jumps(&series, spec.p0_threshold).unwrap_or_default();
        for k in 1..=2 {
            let target = bessel_root(k) * OMEGA;
            if !jumps.iter().any(|j| (j.location - target).abs() <= step) {
                missing += 1;
            }
        }
    }
    checks.push(Check::at_most("missing p0 ridges (theta>=0.4pi)", missing as f64, 0.0));

    // θ of the largest I_b − I_r discontinuity at z_1 Ω
    let root = bessel_root(1) * OMEGA;
    let mut best = (f64::NEG_INFINITY, f64::NAN);
    for (row, &theta) in rows.iter().zip(&thetas) {
        let xs: Vec<f64> = row.iter().map(|r| r.axis1_value).collect();
        let ys: Vec<f64> = row
            .iter()
            .map(|r| {
                let e = rec(r).emission;
                e.intensity_blue - e.intensity_red
            })
            .collect();
        if let Some(j) = extrapolated_jump(&xs, &ys, root) {
            if j > best.0 {
                best = (j, theta);
            }
        }
    }
    checks.push(Check::within("argmax_theta/pi |jump(I_b-I_r)|", best.1 / PI, 0.25, 0.35));
    checks.push(Check::runtime(elapsed, 600.0));
    checks
}

/// Criterion 10. With `out_dir`, the CSV and metadata are written there.
pub fn figure_reproduction(points: usize, out_dir: Option<&Path>) -> CriterionReport {
    timed(10, "figure map reproduction", || {
        let start = Instant::now();
        let spec = figure_spec(points);
        let result = match run_sweep(&spec) {
            Ok(r) => r,
            Err(e) => return vec![Check::failed_with("sweep", &e)],
        };
        if let Some(dir) = out_dir {
            let write = || -> std::io::Result<()> {
                let csv = std::fs::File::create(dir.join("figure_map.csv"))?;
                write_sweep_csv(&result, std::io::BufWriter::new(csv))?;
                let meta = std::fs::File::create(dir.join("figure_map.csv.meta"))?;
                let failures: Vec<(usize, String)> =
                    result.failures().map(|(i, e)| (i, e.to_string())).collect();
                write_metadata(&spec, &result.jumps, &failures, std::io::BufWriter::new(meta))
            };
            if let Err(e) = write() {
                return vec![Check {
                    name: format!("write outputs ({e})"),
                    value: f64::NAN,
                    bound: "no error".into(),
                    passed: false,
                }];
            }
        }
        figure_checks(&result, start.elapsed())
    })
}

pub const CRITERIA: u8 = 10;

/// Run one criterion by number (1..=10).
pub fn run_criterion(id: u8, out_dir: Option<&Path>) -> Option<CriterionReport> {
    Some(match id {
        1 => static_gibbs(),
        2 => quasienergy_law(),
        3 => detailed_balance(),
        4 => generalized_parity(),
        5 => probability_jump(),
        6 => ratio_jump(),
        7 => floquet_gibbs_limit(),
        8 => analytic_agreement(),
        9 => property_suite(),
        10 => figure_reproduction(200, out_dir),
        _ => return None,
    })
}
