//! `gravcat` command line.
//!
//! Exit codes: 0 on success, 1 for usage and configuration errors, 2 for
//! numerical failures.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use gravcat_core::gravcat::ThermalSpec;
use gravcat_core::{
    analytic_spectrum, build_hamiltonian, hermitian_eig, omega_from_geometry, partition_function,
    thermal_state, GeometryParams, ModelParams, OracleConfig, ThermalConvention,
    GRAVITATIONAL_CONSTANT,
};

use crate::config::Config;
use crate::error::{classify, CliError, ConfigError};
use crate::output::{to_csv_string, OutputRecord};
use crate::presets::{run_preset, Preset};
use crate::report::temperature_trend_violations;
use crate::sweep::{
    evaluate_point, run_grid, run_sweep, GridSpec, Range, Scale, SweepSpec, SweepVariable,
};

pub const SEED_ENV: &str = "GRAVCAT_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "gravcat",
    version,
    about = "Ergotropy of two coupled qubits in thermal states"
)]
struct Cli {
    /// Flat key=value file; flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Worker threads for sweeps and grids.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Analytic and numerical spectrum of the Hamiltonian.
    Spectrum(ModelArgs),
    /// Thermal density matrix.
    State(StateArgs),
    /// Ergotropy at one parameter point, as one CSV record.
    Ergotropy(ErgotropyArgs),
    /// Sweep temperature or coupling, CSV output.
    Sweep(SweepArgs),
    /// Ergotropy over a (T, Omega) grid, CSV output.
    Grid(GridArgs),
    /// Coupling from masses and distances.
    Geometry(GeometryArgs),
}

#[derive(Debug, Args)]
struct ModelArgs {
    #[arg(long, allow_negative_numbers = true)]
    omega: Option<f64>,
    /// Gravitational coupling Omega.
    #[arg(long, allow_negative_numbers = true)]
    coupling: Option<f64>,
}

#[derive(Debug, Args)]
struct StateArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, allow_negative_numbers = true)]
    temperature: Option<f64>,
    /// gibbs, inverted or paper_literal
    #[arg(long)]
    convention: Option<String>,
}

#[derive(Debug, Args)]
struct OracleArgs {
    /// Attach the random unitary-orbit search bound.
    #[arg(long)]
    oracle: bool,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    refine: Option<usize>,
    /// Oracle seed; defaults to $GRAVCAT_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct ErgotropyArgs {
    #[command(flatten)]
    state: StateArgs,
    #[command(flatten)]
    oracle: OracleArgs,
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// fig2, fig3 or fig4
    #[arg(long)]
    preset: Option<String>,
    /// temperature or coupling
    #[arg(long)]
    var: Option<String>,
    /// linear or log
    #[arg(long)]
    scale: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    start: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    stop: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    #[command(flatten)]
    model: ModelArgs,
    /// Fixed temperature for coupling sweeps.
    #[arg(long, allow_negative_numbers = true)]
    temperature: Option<f64>,
    /// Comma-separated list.
    #[arg(long)]
    convention: Option<String>,
    #[command(flatten)]
    oracle: OracleArgs,
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GridArgs {
    #[arg(long)]
    preset: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    omega: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    t_start: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    t_stop: Option<f64>,
    #[arg(long)]
    t_points: Option<usize>,
    #[arg(long)]
    t_scale: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    c_start: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    c_stop: Option<f64>,
    #[arg(long)]
    c_points: Option<usize>,
    #[arg(long)]
    c_scale: Option<String>,
    #[arg(long)]
    convention: Option<String>,
    #[command(flatten)]
    oracle: OracleArgs,
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GeometryArgs {
    /// kg
    #[arg(long, allow_negative_numbers = true)]
    mass: Option<f64>,
    /// Separation with both particles in the same relative minimum, m.
    #[arg(long, allow_negative_numbers = true)]
    d: Option<f64>,
    /// Separation with the particles in different relative minima, m.
    #[arg(long, allow_negative_numbers = true)]
    d_prime: Option<f64>,
    /// Gravitational constant, m^3 kg^-1 s^-2.
    #[arg(long, allow_negative_numbers = true)]
    g: Option<f64>,
}

struct Context {
    config: Config,
    env_seed: Option<String>,
}

/// What a command produced: text for standard output and notes for
/// standard error.
#[derive(Default)]
struct Outcome {
    stdout: String,
    notes: Vec<String>,
}

/// Runs the CLI with the process environment.
pub fn cli_main<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run(argv, std::env::var(SEED_ENV).ok(), stdout, stderr)
}

/// [`cli_main`] with the seed variable passed in explicitly.
pub fn run<I, T>(
    argv: I,
    env_seed: Option<String>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    1
                }
            };
        }
    };

    let result = prepare(&cli, env_seed).and_then(|(ctx, threads)| match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| ConfigError::new("threads", e.to_string()).into())
            .and_then(|pool| pool.install(|| dispatch(&cli.command, &ctx))),
        None => dispatch(&cli.command, &ctx),
    });

    match result {
        Ok(outcome) => {
            for note in &outcome.notes {
                let _ = writeln!(stderr, "{note}");
            }
            if stdout.write_all(outcome.stdout.as_bytes()).is_err() {
                return 1;
            }
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn prepare(cli: &Cli, env_seed: Option<String>) -> Result<(Context, Option<usize>), CliError> {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let threads = config.get(cli.threads, "threads")?;
    if threads == Some(0) {
        return Err(ConfigError::new("threads", "must be at least 1").into());
    }
    Ok((Context { config, env_seed }, threads))
}

fn dispatch(cmd: &Command, ctx: &Context) -> Result<Outcome, CliError> {
    match cmd {
        Command::Spectrum(a) => spectrum(a, ctx),
        Command::State(a) => state(a, ctx),
        Command::Ergotropy(a) => ergotropy(a, ctx),
        Command::Sweep(a) => sweep(a, ctx),
        Command::Grid(a) => grid(a, ctx),
        Command::Geometry(a) => geometry(a, ctx),
    }
}

fn model(a: &ModelArgs, ctx: &Context) -> Result<ModelParams, CliError> {
    let omega = ctx.config.get_or(a.omega, "omega", 1.0)?;
    let coupling = ctx.config.require(a.coupling, "coupling")?;
    ModelParams::new(omega, coupling).map_err(classify)
}

fn parse_conventions(raw: &str) -> Result<Vec<ThermalConvention>, ConfigError> {
    raw.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.parse::<ThermalConvention>()
                .map_err(|e| ConfigError::new("convention", e.to_string()))
        })
        .collect()
}

fn conventions(flag: &Option<String>, ctx: &Context) -> Result<Vec<ThermalConvention>, CliError> {
    let raw = ctx.config.get(flag.clone(), "convention")?;
    match raw {
        None => Ok(vec![ThermalConvention::Gibbs]),
        Some(s) => {
            let list = parse_conventions(&s)?;
            if list.is_empty() {
                return Err(ConfigError::new("convention", "empty list").into());
            }
            Ok(list)
        }
    }
}

fn single_convention(flag: &Option<String>, ctx: &Context) -> Result<ThermalConvention, CliError> {
    let list = conventions(flag, ctx)?;
    if list.len() != 1 {
        return Err(ConfigError::new("convention", "exactly one convention expected").into());
    }
    Ok(list[0])
}

fn oracle(a: &OracleArgs, ctx: &Context) -> Result<Option<OracleConfig>, CliError> {
    let enabled = a.oracle || ctx.config.get::<bool>(None, "oracle")?.unwrap_or(false);
    if !enabled {
        return Ok(None);
    }
    let defaults = OracleConfig::default();
    let samples = ctx
        .config
        .get_or(a.samples, "samples", defaults.n_samples())?;
    let refine = ctx
        .config
        .get_or(a.refine, "refine", defaults.refine_steps())?;
    let seed = match ctx.config.get(a.seed, "seed")? {
        Some(s) => s,
        None => match &ctx.env_seed {
            Some(v) => v
                .trim()
                .parse()
                .map_err(|e| ConfigError::new(SEED_ENV, format!("`{v}`: {e}")))?,
            None => 0,
        },
    };
    OracleConfig::new(samples, refine, seed)
        .map(Some)
        .map_err(|_| ConfigError::new("samples", "at least one sample is required").into())
}

fn emit(
    records: &[OutputRecord],
    output: &Option<PathBuf>,
    ctx: &Context,
    outcome: &mut Outcome,
) -> Result<(), CliError> {
    let csv = to_csv_string(records);
    match ctx.config.get(output.clone(), "output")? {
        Some(path) => {
            std::fs::write(&path, csv)
                .map_err(|e| ConfigError::new("output", format!("{}: {e}", path.display())))?;
        }
        None => outcome.stdout.push_str(&csv),
    }
    Ok(())
}

fn fmt_list(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| format!("{}", v + 0.0))
        .collect::<Vec<_>>()
        .join(",")
}

fn spectrum(a: &ModelArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let p = model(a, ctx)?;
    let s = analytic_spectrum(&p);
    let numeric = hermitian_eig(&build_hamiltonian(&p))?;
    let mut out = String::new();
    let _ = writeln!(out, "omega={}", p.omega());
    let _ = writeln!(out, "Omega={}", p.coupling());
    let _ = writeln!(out, "Delta={}", s.delta);
    let _ = writeln!(out, "phi_plus={}", s.phi_plus);
    let _ = writeln!(out, "phi_minus={}", s.phi_minus);
    let _ = writeln!(out, "eigenvalues={}", fmt_list(&s.eigenvalues));
    let _ = writeln!(
        out,
        "numeric_eigenvalues={}",
        fmt_list(numeric.eigenvalues())
    );
    Ok(Outcome {
        stdout: out,
        notes: vec![],
    })
}

fn thermal(a: &StateArgs, ctx: &Context) -> Result<(ModelParams, ThermalSpec<f64>), CliError> {
    let p = model(&a.model, ctx)?;
    let t = ctx.config.require(a.temperature, "temperature")?;
    let conv = single_convention(&a.convention, ctx)?;
    let spec = ThermalSpec::new(t, conv).map_err(classify)?;
    Ok((p, spec))
}

fn state(a: &StateArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let (p, t) = thermal(a, ctx)?;
    let rho = thermal_state(&p, &t)?;
    let mut out = String::new();
    let _ = writeln!(out, "convention={}", t.convention());
    let _ = writeln!(out, "T={}", t.temperature());
    match partition_function(&p, &t) {
        Ok(z) => {
            let _ = writeln!(out, "Z={z}");
        }
        Err(_) => {
            let _ = writeln!(out, "Z=inf");
        }
    }
    for i in 0..4 {
        let row: Vec<f64> = (0..4).map(|j| rho.matrix()[(i, j)].re).collect();
        let _ = writeln!(out, "row{}={}", i + 1, fmt_list(&row));
    }
    Ok(Outcome {
        stdout: out,
        notes: vec![],
    })
}

fn ergotropy(a: &ErgotropyArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let (p, t) = thermal(&a.state, ctx)?;
    let oracle = oracle(&a.oracle, ctx)?;
    let rec = evaluate_point(
        p.omega(),
        p.coupling(),
        t.temperature(),
        t.convention(),
        oracle.as_ref(),
    )
    .map_err(classify)?;
    let mut outcome = Outcome::default();
    emit(&[rec], &a.output, ctx, &mut outcome)?;
    Ok(outcome)
}

fn trend_notes(records: &[OutputRecord]) -> Vec<String> {
    let checked: Vec<OutputRecord> = records
        .iter()
        .filter(|r| r.convention != ThermalConvention::Gibbs.as_str())
        .cloned()
        .collect();
    temperature_trend_violations(&checked)
        .into_iter()
        .map(|v| format!("reproduction finding: {v}"))
        .collect()
}

fn preset(flag: &Option<String>, ctx: &Context) -> Result<Option<Preset>, CliError> {
    let raw: Option<String> = ctx.config.get(flag.clone(), "preset")?;
    Ok(raw.map(|s| s.parse()).transpose()?)
}

fn sweep(a: &SweepArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let mut outcome = Outcome::default();
    if let Some(preset) = preset(&a.preset, ctx)? {
        let records = run_preset(preset)?;
        if preset == Preset::Fig2 {
            outcome.notes = trend_notes(&records);
        }
        emit(&records, &a.output, ctx, &mut outcome)?;
        return Ok(outcome);
    }

    let variable: SweepVariable = ctx.config.require(a.var.clone(), "var")?.parse()?;
    let default_scale = match variable {
        SweepVariable::Temperature => Scale::Log,
        SweepVariable::Coupling => Scale::Linear,
    };
    let scale = match ctx.config.get(a.scale.clone(), "scale")? {
        Some(s) => s.parse::<Scale>()?,
        None => default_scale,
    };
    let range = Range::new(
        ctx.config.require(a.start, "start")?,
        ctx.config.require(a.stop, "stop")?,
        ctx.config.require(a.points, "points")?,
        scale,
    );
    let spec = SweepSpec {
        variable,
        range,
        omega: ctx.config.get_or(a.model.omega, "omega", 1.0)?,
        coupling: match variable {
            SweepVariable::Temperature => Some(ctx.config.require(a.model.coupling, "coupling")?),
            SweepVariable::Coupling => None,
        },
        temperature: match variable {
            SweepVariable::Coupling => Some(ctx.config.require(a.temperature, "temperature")?),
            SweepVariable::Temperature => None,
        },
        conventions: conventions(&a.convention, ctx)?,
        oracle: oracle(&a.oracle, ctx)?,
    };
    let records = run_sweep(&spec)?;
    if variable == SweepVariable::Temperature {
        outcome.notes = trend_notes(&records);
    }
    emit(&records, &a.output, ctx, &mut outcome)?;
    Ok(outcome)
}

fn grid(a: &GridArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let mut outcome = Outcome::default();
    if let Some(preset) = preset(&a.preset, ctx)? {
        let records = run_preset(preset)?;
        emit(&records, &a.output, ctx, &mut outcome)?;
        return Ok(outcome);
    }
    let c = &ctx.config;
    let scale = |flag: &Option<String>, key: &str, default: Scale| -> Result<Scale, CliError> {
        match c.get(flag.clone(), key)? {
            Some(s) => s
                .parse::<Scale>()
                .map_err(|e| ConfigError::new(key, e.message).into()),
            None => Ok(default),
        }
    };
    let spec = GridSpec {
        omega: c.get_or(a.omega, "omega", 1.0)?,
        temperature: Range::new(
            c.require(a.t_start, "t_start")?,
            c.require(a.t_stop, "t_stop")?,
            c.require(a.t_points, "t_points")?,
            scale(&a.t_scale, "t_scale", Scale::Log)?,
        ),
        coupling: Range::new(
            c.require(a.c_start, "c_start")?,
            c.require(a.c_stop, "c_stop")?,
            c.require(a.c_points, "c_points")?,
            scale(&a.c_scale, "c_scale", Scale::Linear)?,
        ),
        convention: single_convention(&a.convention, ctx)?,
        oracle: oracle(&a.oracle, ctx)?,
    };
    let result = run_grid(&spec)?;
    emit(&result.records, &a.output, ctx, &mut outcome)?;
    Ok(outcome)
}

fn geometry(a: &GeometryArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let c = &ctx.config;
    let g = GeometryParams::with_constant(
        c.require(a.mass, "mass")?,
        c.require(a.d, "d")?,
        c.require(a.d_prime, "d_prime")?,
        c.get_or(a.g, "g", GRAVITATIONAL_CONSTANT)?,
    )
    .map_err(classify)?;
    let omega = omega_from_geometry(&g).map_err(classify)?;
    Ok(Outcome {
        stdout: format!("Omega={omega:e}\n"),
        notes: vec![],
    })
}
