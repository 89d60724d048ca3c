//! `cascade4` command line: simulate named experiments, export the standard
//! figure datasets, and print spectra and rotation angles.

mod config;
mod figures;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use cascade4::coherent::{
    coherent_probability_trace_with, poisson_weights, CoherentOptions, WeightingMode,
};
use cascade4::quantized::{
    quantized_euler_angles, sector_eigenvalues, sector_probability_trace, SectorParams,
};
use cascade4::semiclassical::{
    probability_trace, resonance_eigenvalues, rotating_frame_hamiltonian,
    semiclassical_euler_angles, SemiclassicalParams,
};
use cascade4::trace::TimeGrid;
use clap::{Parser, Subcommand};
use serde::Serialize;

use config::{ConfigError, Format, Model, RawConfig, RunConfig, Weighting};
use output::{write_csv, write_json, TraceData};

#[derive(Parser)]
#[command(name = "cascade4", version, about = "Rabi dynamics of the equidistant cascade four-level atom")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and emit its probability trace.
    Simulate(SimulateArgs),
    /// Export the 24 standard figure panels plus a manifest.
    ReproduceFigures(ReproduceArgs),
    /// Print the energy spectrum (closed form where available).
    Eigen(EigenArgs),
    /// Print the six rotation angles, classical or for a photon sector.
    Angles(AnglesArgs),
}

#[derive(clap::Args)]
#[command(allow_negative_numbers = true)]
struct SimulateArgs {
    /// Which drive model to run.
    #[arg(value_enum)]
    model: Model,
    /// Initial condition: I..IV (semiclassical) or V..VIII (quantized, coherent).
    #[arg(long)]
    case: Option<String>,
    /// Classical coupling kappa (semiclassical model).
    #[arg(long)]
    kappa: Option<f64>,
    /// Cavity coupling g (quantized and coherent models).
    #[arg(long)]
    g: Option<f64>,
    /// Detuning (0 selects the closed-form route).
    #[arg(long)]
    delta: Option<f64>,
    /// Photon index of the sector (quantized model).
    #[arg(long)]
    n: Option<u32>,
    /// Mean photon number of the coherent field.
    #[arg(long)]
    nbar: Option<f64>,
    /// Poisson tail tolerance for truncation.
    #[arg(long)]
    epsilon: Option<f64>,
    /// End of the time grid (units of the inverse coupling).
    #[arg(long)]
    tmax: Option<f64>,
    /// Number of grid points (>= 2).
    #[arg(long)]
    steps: Option<usize>,
    /// Output format.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Output path (standard output if omitted).
    #[arg(long)]
    output: Option<PathBuf>,
    /// How Poisson weights attach to sectors (coherent model).
    #[arg(long, value_enum)]
    weighting_mode: Option<Weighting>,
    /// Optional key=value config file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(clap::Args)]
struct ReproduceArgs {
    /// Directory for the panel CSVs and manifest.
    #[arg(long, default_value = "figures")]
    outdir: PathBuf,
    /// Also write a gnuplot script referencing the CSVs.
    #[arg(long)]
    plot_script: bool,
}

#[derive(clap::Args)]
#[command(allow_negative_numbers = true)]
struct EigenArgs {
    /// Photon sector; omit for the classical-drive spectrum.
    #[arg(long)]
    n: Option<u32>,
    /// Cavity coupling (with --n).
    #[arg(long, default_value_t = 1.0)]
    g: f64,
    /// Classical coupling (without --n).
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,
    /// Detuning (without --n; nonzero goes through the numerical solver).
    #[arg(long, default_value_t = 0.0)]
    delta: f64,
}

#[derive(clap::Args)]
struct AnglesArgs {
    /// Photon sector; omit for the classical-drive angles.
    #[arg(long)]
    n: Option<u32>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Simulate(args) => match run_simulate(args) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => e.exit_code(),
        },
        Command::ReproduceFigures(args) => {
            let start = Instant::now();
            match figures::reproduce_figures(&args.outdir, args.plot_script) {
                Ok(summary) => {
                    eprintln!(
                        "reproduce-figures: {} panels in {} (coherent n_max={}) wall={:.1?}",
                        summary.panel_count,
                        args.outdir.display(),
                        summary.coherent_n_max,
                        start.elapsed()
                    );
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(4)
                }
            }
        }
        Command::Eigen(args) => run_eigen(args),
        Command::Angles(args) => run_angles(args),
    }
}

enum RunError {
    Config(ConfigError),
    Numerical(cascade4::Error),
    Io(std::io::Error),
}

impl RunError {
    fn exit_code(&self) -> ExitCode {
        match self {
            RunError::Config(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
            RunError::Numerical(e) => {
                eprintln!("error: {e}");
                ExitCode::from(3)
            }
            RunError::Io(e) => {
                eprintln!("error: {e}");
                ExitCode::from(4)
            }
        }
    }
}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        RunError::Config(e)
    }
}

impl From<cascade4::Error> for RunError {
    fn from(e: cascade4::Error) -> Self {
        RunError::Numerical(e)
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Io(e)
    }
}

#[derive(Serialize)]
struct SemiclassicalMeta {
    model: &'static str,
    case: String,
    kappa: f64,
    delta: f64,
    tmax: f64,
    steps: usize,
}

#[derive(Serialize)]
struct QuantizedMeta {
    model: &'static str,
    case: String,
    n: u32,
    g: f64,
    delta: f64,
    tmax: f64,
    steps: usize,
}

#[derive(Serialize)]
struct CoherentMetaOut {
    model: &'static str,
    case: String,
    nbar: f64,
    epsilon: f64,
    n_max: u32,
    g: f64,
    weighting_mode: &'static str,
    skipped_weight: f64,
    tmax: f64,
    steps: usize,
}

fn run_simulate(args: SimulateArgs) -> Result<(), RunError> {
    let start = Instant::now();
    let flags = RawConfig {
        case: args.case,
        kappa: args.kappa,
        g: args.g,
        delta: args.delta,
        n: args.n,
        nbar: args.nbar,
        epsilon: args.epsilon,
        tmax: args.tmax,
        steps: args.steps,
        format: args.format,
        output: args.output,
        weighting_mode: args.weighting_mode,
    };
    let cfg = config::resolve(args.model, flags, args.config.as_ref())?;
    let grid = TimeGrid::uniform(cfg.tmax, cfg.steps).map_err(RunError::Numerical)?;

    let (data, meta, summary) = compute(&cfg, &grid)?;

    let mut sink: Box<dyn Write> = match &cfg.output {
        Some(path) => Box::new(std::io::BufWriter::new(std::fs::File::create(path)?)),
        None => Box::new(std::io::BufWriter::new(std::io::stdout().lock())),
    };
    match cfg.format {
        Format::Csv => write_csv(&data, &mut sink)?,
        Format::Json => write_json(&data, &meta, &mut sink)?,
    }
    sink.flush()?;
    eprintln!("{summary} wall={:.1?}", start.elapsed());
    Ok(())
}

fn compute(
    cfg: &RunConfig,
    grid: &TimeGrid,
) -> Result<(TraceData, serde_json::Value, String), RunError> {
    match cfg.model {
        Model::Semiclassical => {
            let params = SemiclassicalParams::new(cfg.delta, 0.0, cfg.kappa);
            let trace = probability_trace(cfg.case, &params, grid)?;
            let meta = SemiclassicalMeta {
                model: "semiclassical",
                case: cfg.case.to_string(),
                kappa: cfg.kappa,
                delta: cfg.delta,
                tmax: cfg.tmax,
                steps: cfg.steps,
            };
            let summary = format!(
                "semiclassical case {} kappa={} delta={} steps={}",
                cfg.case, cfg.kappa, cfg.delta, cfg.steps
            );
            Ok((
                TraceData::full(&trace),
                serde_json::to_value(meta).expect("static struct serializes"),
                summary,
            ))
        }
        Model::Quantized => {
            let params = SectorParams {
                n: cfg.n,
                g: cfg.g,
                delta: cfg.delta,
            };
            let trace = sector_probability_trace(cfg.case, &params, grid)?;
            let meta = QuantizedMeta {
                model: "quantized",
                case: cfg.case.to_string(),
                n: cfg.n,
                g: cfg.g,
                delta: cfg.delta,
                tmax: cfg.tmax,
                steps: cfg.steps,
            };
            let summary = format!(
                "quantized case {} n={} g={} delta={} steps={}",
                cfg.case, cfg.n, cfg.g, cfg.delta, cfg.steps
            );
            Ok((
                TraceData::full(&trace),
                serde_json::to_value(meta).expect("static struct serializes"),
                summary,
            ))
        }
        Model::Coherent => {
            let field = poisson_weights(cfg.nbar, cfg.epsilon)?;
            let weighting = match cfg.weighting_mode {
                Weighting::Paper => WeightingMode::Paper,
                Weighting::Physical => WeightingMode::Physical,
            };
            let avg = coherent_probability_trace_with(
                cfg.case,
                &field,
                cfg.g,
                grid,
                CoherentOptions {
                    weighting,
                    renormalize: false,
                },
            )?;
            let meta = CoherentMetaOut {
                model: "coherent",
                case: cfg.case.to_string(),
                nbar: cfg.nbar,
                epsilon: cfg.epsilon,
                n_max: avg.meta.n_max,
                g: cfg.g,
                weighting_mode: avg.meta.weighting.as_str(),
                skipped_weight: avg.meta.skipped_weight,
                tmax: cfg.tmax,
                steps: cfg.steps,
            };
            let summary = format!(
                "coherent case {} nbar={} n_max={} weighting={} steps={}",
                cfg.case,
                cfg.nbar,
                avg.meta.n_max,
                avg.meta.weighting.as_str(),
                cfg.steps
            );
            Ok((
                TraceData::full(&avg.trace),
                serde_json::to_value(meta).expect("static struct serializes"),
                summary,
            ))
        }
    }
}

fn run_eigen(args: EigenArgs) -> ExitCode {
    match args.n {
        Some(n) => {
            if !(args.g > 0.0) || !args.g.is_finite() {
                eprintln!("error: invalid `g`: coupling must be positive");
                return ExitCode::from(2);
            }
            let spectrum = sector_eigenvalues(n, args.g);
            println!("model = quantized");
            println!("n = {n}");
            println!("g = {}", args.g);
            println!("b = {}", spectrum.b);
            for (k, v) in spectrum.values.iter().enumerate() {
                println!("lambda{} = {v}", k + 1);
            }
        }
        None => {
            if !(args.kappa > 0.0) || !args.kappa.is_finite() {
                eprintln!("error: invalid `kappa`: coupling must be positive");
                return ExitCode::from(2);
            }
            println!("model = semiclassical");
            println!("kappa = {}", args.kappa);
            println!("delta = {}", args.delta);
            let values = if args.delta == 0.0 {
                resonance_eigenvalues(args.kappa)
            } else {
                let params = SemiclassicalParams::new(args.delta, 0.0, args.kappa);
                let h = rotating_frame_hamiltonian(&params);
                match cascade4::linalg::hermitian_eigensystem(&h) {
                    Ok(eig) => eig.values,
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(3);
                    }
                }
            };
            for (k, v) in values.iter().enumerate() {
                println!("lambda{} = {v}", k + 1);
            }
        }
    }
    ExitCode::SUCCESS
}

fn run_angles(args: AnglesArgs) -> ExitCode {
    let angles = match args.n {
        Some(0) => {
            eprintln!("error: invalid `n`: the n = 0 sector has no four-state rotation");
            return ExitCode::from(2);
        }
        Some(n) => match quantized_euler_angles(n) {
            Ok(a) => {
                println!("model = quantized");
                println!("n = {n}");
                a
            }
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(3);
            }
        },
        None => {
            println!("model = semiclassical");
            semiclassical_euler_angles()
        }
    };
    for (k, v) in angles.to_array().iter().enumerate() {
        println!("theta{} = {v}", k + 1);
    }
    ExitCode::SUCCESS
}
