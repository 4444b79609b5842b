//! `ecg`: exact Riemann solutions, limit sweeps and finite-volume checks for
//! the extended Chaplygin gas and its limit systems.
//!
//! Exit codes: 0 success, 1 soft convergence failure (a sweep whose checks
//! did not all converge), 2 input error, 3 numerical error.

mod commands;
mod problem;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use ecg_riemann::{ModelTag, State};

use commands::{Format, Outcome, Output};
use problem::{parse_state, Overrides, Problem, ProblemFile};

/// Bad flags, files or data.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct InputError(pub String);

/// A numerical failure that is not the caller's fault.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct NumericalError(pub String);

#[derive(Parser)]
#[command(name = "ecg", version, about = "Riemann solutions for the extended Chaplygin gas")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON problem file; flags override its values.
    #[arg(long, global = true)]
    file: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    model: Option<ModelArg>,
    #[arg(long = "A", global = true)]
    a: Option<f64>,
    #[arg(long = "B", global = true)]
    b: Option<f64>,
    #[arg(long, global = true)]
    n: Option<f64>,
    #[arg(long, global = true)]
    alpha: Option<f64>,
    /// Left state as `rho,u`.
    #[arg(long, global = true, value_parser = parse_state, allow_hyphen_values = true)]
    left: Option<State>,
    /// Right state as `rho,u`.
    #[arg(long, global = true, value_parser = parse_state, allow_hyphen_values = true)]
    right: Option<State>,
    /// Draws any state not given elsewhere from this seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory; without it the artifact selected by --format goes to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Artifact printed to stdout when no --out is given (default json;
    /// classify prints the bare region string unless json is requested).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum ModelArg {
    Ecg,
    Gcg,
    Transport,
}

impl From<ModelArg> for ModelTag {
    fn from(m: ModelArg) -> ModelTag {
        match m {
            ModelArg::Ecg => ModelTag::Ecg,
            ModelArg::Gcg => ModelTag::Gcg,
            ModelArg::Transport => ModelTag::Transport,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve the Riemann problem and write the wave structure.
    Solve {
        /// Time at which sampled x = xi t values are reported.
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        /// Number of uniform xi samples for the CSV profile.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Print the wave pattern of the problem.
    Classify,
    /// Run the limit sweep described by the schedule block.
    Sweep {
        /// Convergence tolerance; defaults by schedule mode.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Evolve the grid block with a finite-volume scheme and compare.
    Fv {
        /// Override the grid's final time.
        #[arg(long)]
        t: Option<f64>,
        /// Run four successively doubled grids and report the error table.
        #[arg(long)]
        refine: bool,
        /// Half width of the concentration window for delta shocks.
        #[arg(long, default_value_t = 0.1)]
        half_width: f64,
    },
    /// Write SVG profile and phase-plane plots.
    Plot {
        #[arg(long)]
        profile: bool,
        #[arg(long)]
        phase: bool,
        #[arg(long, default_value_t = 400)]
        samples: usize,
    },
}

fn run(cli: Cli) -> Result<Outcome> {
    let file = cli.file.as_deref().map(ProblemFile::load).transpose()?;
    let overrides = Overrides {
        model: cli.model.map(Into::into),
        a: cli.a,
        b: cli.b,
        n: cli.n,
        alpha: cli.alpha,
        left: cli.left,
        right: cli.right,
        seed: cli.seed,
    };
    let problem = Problem::resolve(file, &overrides)?;
    let out = Output { dir: cli.out.clone(), format: cli.format.unwrap_or(Format::Json) };
    match cli.command {
        Command::Solve { t, samples } => commands::solve(&problem, t, samples, &out),
        Command::Classify => commands::classify(&problem, cli.format == Some(Format::Json), &out),
        Command::Sweep { tol } => commands::sweep(&problem, tol, &out),
        Command::Fv { t, refine, half_width } => commands::fv(&problem, t, refine, half_width, &out),
        Command::Plot { profile, phase, samples } => {
            commands::plot(&problem, profile, phase, samples, cli.out.unwrap_or_else(|| PathBuf::from(".")))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<NumericalError>().is_some() {
        3
    } else if let Some(core) = e.downcast_ref::<ecg_riemann::Error>() {
        if core.is_input_error() {
            2
        } else {
            3
        }
    } else {
        2
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::SoftFailure) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
