//! Batch command surface over the instanton library.
//!
//! Every command writes deterministic CSV/JSON (fixed 17-digit floats,
//! fixed enumeration orders) stamped with a hash of its configuration.
//! Exit codes: 0 success, 2 usage error, 3 numerical failure (with a
//! diagnostic JSON sidecar next to the output prefix).

mod commands;
mod output;
mod svg;

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "instanton", version, about = "Instanton counting, Seiberg-Witten geometry, limit shapes, and stepped surfaces")]
struct Cli {
    /// Worker threads for fixed-point enumerations (results are identical
    /// for any thread count).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Output path prefix for emitted artifacts.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Truncated instanton series, perturbative factor, and full Z.
    Zinst(commands::zinst::Args),
    /// Compare the two evaluation routes of the dual partition function.
    DualzCheck(commands::dualz::Args),
    /// Periods a and a-dual of a curve file.
    Periods(commands::periods::Args),
    /// Prepotential value and Hessian at a Coulomb point.
    Prepotential(commands::prepotential::Args),
    /// Limit shape of a curve: profile CSV, facet intercepts, SVG overlay.
    Limitshape(commands::limitshape::Args),
    /// Two-route Legendre duality report.
    Legendre(commands::legendre::Args),
    /// Ronkin function of a plane curve on a grid, with amoeba boundary.
    Ronkin(commands::ronkin::Args),
    /// Characteristic (Burgers) solution on a grid.
    Burgers(commands::burgers::Args),
    /// Trace a frozen boundary and fit its cardioid.
    Frozen(commands::frozen::Args),
}

pub enum CliError {
    Usage(String),
    Numerical(String),
}

impl From<instanton::Error> for CliError {
    fn from(e: instanton::Error) -> Self {
        CliError::Numerical(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Numerical(format!("io: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .is_err()
        {
            eprintln!("warning: thread pool already initialized");
        }
    }
    let out = cli.out.clone();
    let result = match cli.command {
        Command::Zinst(a) => commands::zinst::run(&a, &out),
        Command::DualzCheck(a) => commands::dualz::run(&a, &out),
        Command::Periods(a) => commands::periods::run(&a, &out),
        Command::Prepotential(a) => commands::prepotential::run(&a, &out),
        Command::Limitshape(a) => commands::limitshape::run(&a, &out),
        Command::Legendre(a) => commands::legendre::run(&a, &out),
        Command::Ronkin(a) => commands::ronkin::run(&a, &out),
        Command::Burgers(a) => commands::burgers::run(&a, &out),
        Command::Frozen(a) => commands::frozen::run(&a, &out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            let diag = output::Json::Obj(vec![
                ("error".into(), output::Json::Str(msg)),
            ]);
            let path = out.with_extension("diag.json");
            let _ = output::write_json(&path, &diag);
            ExitCode::from(3)
        }
    }
}
