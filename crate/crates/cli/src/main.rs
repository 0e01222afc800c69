//! Command-line front end: metric sweeps, Bloch sampling, VQE benchmarks,
//! and schedule validation.
//!
//! Exit codes: 0 success, 1 validation failure, 2 usage error, 3 runtime
//! error. Setting `PULSEFORGE_THREADS` caps the rayon worker count; every
//! output is byte-identical for a given seed and configuration regardless
//! of that setting.

mod commands;
mod output;
mod svg;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "pulseforge", version, about = "Pulse-level ansatz profiling and VQE toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Device model JSON; a built-in ideal linear-chain device is used when
    /// absent.
    #[arg(long)]
    device: Option<std::path::PathBuf>,
    /// Backend name for the parameter constraint lookup table.
    #[arg(long, default_value = "default")]
    backend: String,
    /// RNG seed recorded in every output artifact.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: std::path::PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Sample single-qubit pulse Bloch coordinates over one swept parameter.
    Bloch {
        #[command(flatten)]
        common: CommonArgs,
        /// Swept parameter: the other one stays at its reference value
        /// (angle 0 for amplitude sweeps, amplitude 0.08 for angle sweeps).
        #[arg(long, value_parser = ["amplitude", "angle"])]
        sweep: String,
        #[arg(long, default_value_t = 5000)]
        samples: usize,
    },
    /// Full metric report over (template, qubits, layers) cells.
    Report(ReportArgs),
    /// Expressivity-only shortcut of `report`.
    Expr(ReportArgs),
    /// Entanglement-only shortcut of `report`.
    Ent(ReportArgs),
    /// EPD-only shortcut of `report`.
    Epd(ReportArgs),
    /// Run VQE against a Hamiltonian file.
    Vqe {
        #[command(flatten)]
        common: CommonArgs,
        /// Plain-text Hamiltonian: one `coefficient label` pair per line.
        #[arg(long)]
        hamiltonian: std::path::PathBuf,
        #[arg(long, default_value = "HE_fixCR")]
        template: String,
        #[arg(long, default_value_t = 1)]
        layers: usize,
        #[arg(long, default_value_t = 500)]
        iterations: usize,
        #[arg(long, value_parser = ["spsa", "nelder-mead"], default_value = "spsa")]
        optimizer: String,
        /// Independent restarts (seed, seed+1, …); the best run is reported.
        #[arg(long, default_value_t = 1)]
        restarts: u64,
    },
    /// Validate every instruction of a schedule file against a backend's
    /// constraint spec.
    Validate {
        #[command(flatten)]
        common: CommonArgs,
        /// Schedule JSON file.
        #[arg(long)]
        schedule: std::path::PathBuf,
    },
}

#[derive(Args, Clone)]
struct ReportArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Comma-separated template ids (numbers 1-12 or names).
    #[arg(long, value_delimiter = ',', required = true)]
    template: Vec<String>,
    /// Qubit counts: a single value or an inclusive range `lo..hi`.
    #[arg(long, default_value = "2")]
    qubits: String,
    /// Layer counts: a single value or an inclusive range `lo..hi`.
    #[arg(long, default_value = "1")]
    layers: String,
    /// Fidelity samples per expressivity estimate.
    #[arg(long, default_value_t = 5000)]
    samples: usize,
    /// Parameter samples per entanglement estimate.
    #[arg(long, default_value_t = 500)]
    ent_samples: usize,
    #[arg(long, default_value_t = 50)]
    bins: usize,
    /// Output formats (csv, json, svg).
    #[arg(long, value_delimiter = ',', default_values_t = vec!["csv".to_string(), "json".to_string()])]
    format: Vec<String>,
}

fn main() {
    if let Ok(threads) = std::env::var("PULSEFORGE_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            if n >= 1 {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global()
                    .ok();
            }
        }
    }

    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            3
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        Command::Bloch {
            common,
            sweep,
            samples,
        } => commands::bloch(&common, &sweep, samples),
        Command::Report(args) => commands::report(&args, commands::Metric::All),
        Command::Expr(args) => commands::report(&args, commands::Metric::Expressivity),
        Command::Ent(args) => commands::report(&args, commands::Metric::Entanglement),
        Command::Epd(args) => commands::report(&args, commands::Metric::Epd),
        Command::Vqe {
            common,
            hamiltonian,
            template,
            layers,
            iterations,
            optimizer,
            restarts,
        } => commands::vqe(
            &common,
            &hamiltonian,
            &template,
            layers,
            iterations,
            &optimizer,
            restarts,
        ),
        Command::Validate { common, schedule } => commands::validate(&common, &schedule),
    }
}
