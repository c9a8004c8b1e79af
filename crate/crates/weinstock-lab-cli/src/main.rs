//! Command-line entry point for the convex-body experiments.
//!
//! Exit codes: 0 = success, 1 = at least one inequality verdict failed
//! (violations listed on stderr), 2 = input/configuration error,
//! 3 = numeric failure.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "weinstock-lab", version, about)]
pub struct Cli {
    /// RNG seed, recorded in every output artifact.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Output path (stdout when omitted).
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Worker threads for body sweeps; falls back to WEINSTOCK_LAB_JOBS,
    /// then 1. Output rows are sorted by body index, so the byte output is
    /// independent of the thread count.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum GeneratorKind {
    Polygon2,
    Polytope3,
    Support2,
}

#[derive(Subcommand)]
pub enum Command {
    /// Compute V, P, W, r_max, lambda, excess and the main-inequality margin.
    Functionals {
        #[arg(long, conflicts_with_all = ["generate", "count"])]
        body: Option<std::path::PathBuf>,
        #[arg(long, value_enum, requires = "count")]
        generate: Option<GeneratorKind>,
        #[arg(long)]
        count: Option<usize>,
        /// Extra lambda_gamma exponents to evaluate (2D bodies only).
        #[arg(long, value_delimiter = ',')]
        gamma: Vec<f64>,
    },
    /// Sweep the main isoperimetric inequality over generated bodies
    /// (boundary-barycenter normalized); exit 1 on any violated margin.
    VerifyMain {
        #[arg(long, conflicts_with_all = ["generate", "count"])]
        body: Option<std::path::PathBuf>,
        #[arg(long, value_enum, requires = "count")]
        generate: Option<GeneratorKind>,
        #[arg(long)]
        count: Option<usize>,
    },
    /// Evolve a support body by inverse mean curvature flow and emit the
    /// recorded functional history.
    FlowImcf {
        #[arg(long)]
        body: std::path::PathBuf,
        #[arg(long, default_value_t = 2.0)]
        t_final: f64,
        #[arg(long, default_value_t = 0.01)]
        dt_record: f64,
    },
    /// Hyperplane-cut sweep: exact deltas and the first-order Δλ prediction
    /// per eps.
    Crop {
        #[arg(long)]
        body: std::path::PathBuf,
        /// Strictly decreasing cut depths.
        #[arg(long, value_delimiter = ',', required = true)]
        eps: Vec<f64>,
    },
    /// First Steklov eigenvalues of a polygon body.
    Steklov {
        #[arg(long)]
        body: std::path::PathBuf,
        #[arg(long, default_value_t = 4)]
        refine: usize,
        #[arg(long, default_value_t = 6)]
        k: usize,
        /// Alias for --out.
        #[arg(long)]
        csv: Option<std::path::PathBuf>,
    },
    /// First Wentzell eigenvalues (Steklov plus beta times the boundary
    /// Laplacian).
    Wentzell {
        #[arg(long)]
        body: std::path::PathBuf,
        #[arg(long, default_value_t = 0.5)]
        beta: f64,
        #[arg(long, default_value_t = 4)]
        refine: usize,
        #[arg(long, default_value_t = 6)]
        k: usize,
        #[arg(long)]
        csv: Option<std::path::PathBuf>,
    },
    /// Canonical experiments with pinned expected outcomes.
    Reproduce {
        #[arg(value_enum)]
        target: commands::ReproduceTarget,
        #[arg(long, default_value_t = 0.5)]
        gamma: f64,
        #[arg(long = "k", value_delimiter = ',', default_values_t = [64usize, 128, 256, 512])]
        k_list: Vec<usize>,
        #[arg(long, default_value_t = 4)]
        refine: usize,
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
}

/// Failure taxonomy mapped onto the exit-code contract.
#[derive(Debug)]
pub enum CliError {
    /// Bad configuration, unreadable files, invalid bodies (exit 2).
    Input(String),
    /// Quadrature/solver breakdowns (exit 3).
    Numeric(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Numeric(m) => write!(f, "numeric failure: {m}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(violations) if violations.is_empty() => ExitCode::SUCCESS,
        Ok(violations) => {
            eprintln!("verdict failures:");
            for v in violations {
                eprintln!("  {v}");
            }
            ExitCode::from(1)
        }
        Err(e @ CliError::Input(_)) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
        Err(e @ CliError::Numeric(_)) => {
            eprintln!("{e}");
            ExitCode::from(3)
        }
    }
}
