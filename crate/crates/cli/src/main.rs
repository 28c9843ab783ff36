use std::fmt::Display;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use floquet_cdt::analytic::{
    analytic_transition_elements, effective_hamiltonian, nearest_bessel_root, ratio_jump_prediction,
    s_coefficients,
};
use floquet_cdt::config::Config;
use floquet_cdt::sweep::{
    format_float, run_point, run_spectrum, run_sweep, write_metadata, write_spectrum_csv, write_sweep_csv,
    PointRecord,
};
use floquet_cdt::validation::{run_criterion, CRITERIA};

/// Worker count; unset means one per logical core.
const THREADS_VAR: &str = "FLOQUET_CDT_THREADS";

#[derive(Parser)]
#[command(name = "floquet-cdt", version, about = "Driven spin-boson Floquet simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one parameter point.
    Point(Run),
    /// Sweep one or two parameters; writes CSV plus a .meta sidecar.
    Sweep(Run),
    /// Quasienergies only, no rates.
    Spectrum(Run),
    /// High-frequency expansion at one point.
    Analytic(Run),
    /// Run the acceptance criteria.
    Validate(Validate),
}

#[derive(Args)]
struct Run {
    /// TOML file with [system], [bath], [sweep] and [numerics] sections.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file; stdout when absent. Sweeps write <output>.meta alongside.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Args)]
struct Validate {
    /// Criterion number; all of them when absent. Repeatable.
    #[arg(long = "criterion", value_parser = clap::value_parser!(u8).range(1..=CRITERIA as i64))]
    criteria: Vec<u8>,
    /// Directory for the figure-map CSV of the last criterion.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

macro_rules! overrides {
    ($($field:ident => $key:literal),* $(,)?) => {
        /// Flags mirroring config keys one-to-one.
        #[derive(Args)]
        #[command(next_help_heading = "Config overrides")]
        struct Overrides {
            $(
                #[arg(long = $key, value_name = "VALUE", allow_negative_numbers = true)]
                $field: Option<String>,
            )*
        }

        impl Overrides {
            fn pairs(&self) -> Vec<(String, String)> {
                let mut out = Vec::new();
                $(
                    if let Some(v) = &self.$field {
                        out.push(($key.to_string(), v.clone()));
                    }
                )*
                out
            }
        }
    };
}

overrides! {
    system_h_x => "system.h_x",
    system_h_z0 => "system.h_z0",
    system_h_z1 => "system.h_z1",
    system_omega => "system.omega",
    system_theta => "system.theta",
    bath_gamma => "bath.gamma",
    bath_omega_c => "bath.omega_c",
    bath_temperature => "bath.temperature",
    sweep_axis1 => "sweep.axis1",
    sweep_start => "sweep.start",
    sweep_end => "sweep.end",
    sweep_points => "sweep.points",
    sweep_axis2 => "sweep.axis2",
    sweep_axis2_start => "sweep.axis2_start",
    sweep_axis2_end => "sweep.axis2_end",
    sweep_axis2_points => "sweep.axis2_points",
    sweep_p0_threshold => "sweep.p0_threshold",
    sweep_ratio_threshold => "sweep.ratio_threshold",
    numerics_n_steps => "numerics.n_steps",
    numerics_n_max => "numerics.n_max",
    numerics_analytic => "numerics.analytic",
}

#[derive(Debug)]
enum CliError {
    Core(floquet_cdt::Error),
    Io { path: String, source: io::Error },
    Threads(String),
    Validation(usize),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Io { .. } => "io",
            CliError::Threads(_) => "configuration",
            CliError::Validation(_) => "validation_failed",
        }
    }
}

impl Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io { path, source } => write!(f, "{path}: {source}"),
            CliError::Threads(m) => f.write_str(m),
            CliError::Validation(n) => write!(f, "{n} criteria failed"),
        }
    }
}

impl From<floquet_cdt::Error> for CliError {
    fn from(e: floquet_cdt::Error) -> Self {
        CliError::Core(e)
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Threads(format!("{THREADS_VAR} must be a positive integer, got '{value}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Threads(e.to_string()))
}

fn load(run: &Run) -> Result<Config, CliError> {
    Ok(Config::load(run.config.as_deref(), &run.overrides.pairs())?)
}

/// Run `body` against the output file (or stdout), flushing at the end.
fn with_output(
    output: Option<&Path>,
    body: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> Result<(), CliError> {
    match output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path).map_err(io_err(path))?);
            body(&mut w).and_then(|_| w.flush()).map_err(io_err(path))
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            body(&mut w).and_then(|_| w.flush()).map_err(|source| CliError::Io {
                path: "stdout".into(),
                source,
            })
        }
    }
}

fn sidecar(output: &Path) -> PathBuf {
    let mut s = output.as_os_str().to_owned();
    s.push(".meta");
    PathBuf::from(s)
}

fn write_point(r: &PointRecord, w: &mut dyn Write) -> io::Result<()> {
    let f = format_float;
    let e = &r.emission;
    let lines = [
        ("eps0", f(r.quasienergies[0])),
        ("eps1", f(r.quasienergies[1])),
        ("gap", f(r.gap)),
        ("degenerate", r.degenerate.to_string()),
        ("p0", f(r.populations[0])),
        ("p1", f(r.populations[1])),
        ("W_01", f(r.totals[0])),
        ("W_10", f(r.totals[1])),
        ("a2_n-1_10", f(r.a2_minus1[1][0])),
        ("a2_n-1_01", f(r.a2_minus1[0][1])),
        ("I_b", f(e.intensity_blue)),
        ("I_r", f(e.intensity_red)),
        ("I_0", f(e.intensity_unshifted)),
        ("ratio", e.ratio.map_or_else(|| "undefined".into(), f)),
    ];
    for (k, v) in lines {
        writeln!(w, "{k}={v}")?;
    }
    if let Some(a) = &r.analytic {
        writeln!(w, "eps0_hf={}", f(a.quasienergies[0]))?;
        writeln!(w, "eps1_hf={}", f(a.quasienergies[1]))?;
        writeln!(w, "a2_n-1_10_hf={}", f(a.a2_minus1[1][0]))?;
        writeln!(w, "a2_n-1_01_hf={}", f(a.a2_minus1[0][1]))?;
    }
    Ok(())
}

fn point(run: &Run) -> Result<(), CliError> {
    let config = load(run)?;
    let record = run_point(&config.system_params()?, &config.bath_params()?, &config.point_options())?;
    with_output(run.output.as_deref(), |w| write_point(&record, w))
}

fn sweep(run: &Run) -> Result<(), CliError> {
    let spec = load(run)?.sweep_spec()?;
    let result = run_sweep(&spec)?;
    with_output(run.output.as_deref(), |w| write_sweep_csv(&result, w))?;
    let failures: Vec<(usize, String)> = result.failures().map(|(i, e)| (i, e.to_string())).collect();
    if let Some(path) = &run.output {
        let meta = sidecar(path);
        with_output(Some(&meta), |w| write_metadata(&spec, &result.jumps, &failures, w))?;
    }
    for (i, message) in &failures {
        eprintln!("warning: point {i} failed: {message}");
    }
    Ok(())
}

fn spectrum(run: &Run) -> Result<(), CliError> {
    let spec = load(run)?.sweep_spec()?;
    let rows = run_spectrum(&spec)?;
    with_output(run.output.as_deref(), |w| write_spectrum_csv(&spec, &rows, w))?;
    let failures: Vec<(usize, String)> = rows
        .iter()
        .enumerate()
        .filter_map(|(i, r)| r.solution.as_ref().err().map(|e| (i, e.to_string())))
        .collect();
    if let Some(path) = &run.output {
        let meta = sidecar(path);
        with_output(Some(&meta), |w| write_metadata(&spec, &[], &failures, w))?;
    }
    Ok(())
}

fn analytic(run: &Run) -> Result<(), CliError> {
    let params = load(run)?.system_params()?;
    let h = effective_hamiltonian(&params);
    let (k, z_k) = nearest_bessel_root(params.drive_ratio());
    let jump = ratio_jump_prediction(&params).ok();
    let f = format_float;
    with_output(run.output.as_deref(), |w| {
        writeln!(w, "z={}", f(params.drive_ratio()))?;
        writeln!(w, "nearest_root.index={k}")?;
        writeln!(w, "nearest_root.z={}", f(z_k))?;
        writeln!(w, "nearest_root.h_z1={}", f(z_k * params.omega))?;
        writeln!(w, "h_eff.x={}", f(h.coeff_x))?;
        writeln!(w, "h_eff.z={}", f(h.coeff_z))?;
        writeln!(w, "eps0_hf={}", f(h.quasienergies[0]))?;
        writeln!(w, "eps1_hf={}", f(h.quasienergies[1]))?;
        for n in [0, -1, 1] {
            let s = s_coefficients(&params, n);
            writeln!(w, "s.n{n}.x={}", f(s.s_x))?;
            writeln!(w, "s.n{n}.y={}", f(s.s_y))?;
            writeln!(w, "s.n{n}.z={}", f(s.s_z))?;
            let a = analytic_transition_elements(&params, n);
            for (l, row) in a.iter().enumerate() {
                for (m, c) in row.iter().enumerate() {
                    writeln!(w, "a.n{n}.{l}{m}={} {}", f(c.re), f(c.im))?;
                }
            }
        }
        if s_coefficients(&params, 0).low_frequency {
            writeln!(w, "warning=omega below 5 h_x, expansion not expected to hold")?;
        }
        if let Some(j) = &jump {
            writeln!(w, "ratio_jump.root_index={}", j.root_index)?;
            writeln!(w, "ratio_jump.left={}", f(j.ratio_left))?;
            writeln!(w, "ratio_jump.right={}", f(j.ratio_right))?;
            writeln!(w, "ratio_jump.magnitude={}", f(j.magnitude))?;
        }
        Ok(())
    })
}

fn validate(args: &Validate) -> Result<(), CliError> {
    let ids: Vec<u8> = if args.criteria.is_empty() {
        (1..=CRITERIA).collect()
    } else {
        args.criteria.clone()
    };
    if let Some(dir) = &args.out_dir {
        std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    }
    let mut failed = 0;
    for id in ids {
        let report = run_criterion(id, args.out_dir.as_deref()).expect("criterion id in range");
        println!("{report}");
        if !report.passed() {
            failed += 1;
        }
    }
    if failed > 0 {
        return Err(CliError::Validation(failed));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|_| match &cli.command {
        Command::Point(run) => point(run),
        Command::Sweep(run) => sweep(run),
        Command::Spectrum(run) => spectrum(run),
        Command::Analytic(run) => analytic(run),
        Command::Validate(v) => validate(v),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let message = e.to_string().replace('\\', "\\\\").replace('"', "\\\"");
            eprintln!("error: kind={} message=\"{message}\"", e.kind());
            ExitCode::FAILURE
        }
    }
}
