use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Exact verification of normed inverse semigroups and partial metrics.
#[derive(Parser, Debug)]
#[command(name = "semnorm", version)]
pub struct Cli {
    /// Seed for sampled verification of symbolic carriers.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Worker threads for the exhaustive loops (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Number of samples for symbolic carriers.
    #[arg(long, global = true, default_value_t = 10_000)]
    samples: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a structure file for a built-in family.
    Generate(GenerateArgs),
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        what: What,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Write an intrinsic pseudo-metric.
    Induce {
        #[arg(long, value_enum)]
        variant: Variant,
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert between pseudo-norms and metrics on Clifford monoids.
    Bridge {
        #[arg(long, value_enum)]
        direction: Direction,
        #[command(flatten)]
        inputs: Inputs,
        /// Where to write the recovered valuation.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the permutability and separation flags of a pseudo-norm.
    Classify {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Quotient an interlaced space by d_{p,q} = 0.
    Quotient {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    /// Size parameter (group order for `clifford`).
    #[arg(long)]
    n: Option<usize>,
    /// Dimension for `bicyclic`, semilattice bits for `clifford`.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    dims: Option<usize>,
    #[arg(long)]
    max: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Cyclic,
    Powerset,
    Chain,
    Grid,
    SymInverse,
    Clifford,
    Bicyclic,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum What {
    Semigroup,
    Pseudonorm,
    Norm,
    Ppm,
    Interlaced,
    Skew,
    Bridge,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    D0,
    D1,
    D2,
    Dpq,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    MetricToNorm,
    Roundtrip,
}

/// Input files. Which ones are needed depends on the command.
#[derive(Args, Debug, Default)]
pub struct Inputs {
    /// Semigroup file, or a bicyclic descriptor.
    #[arg(long)]
    semigroup: Option<PathBuf>,
    #[arg(long)]
    valuation: Option<PathBuf>,
    /// Pair-map file (a metric for `bridge` and `verify --what skew`).
    #[arg(long)]
    pairmap: Option<PathBuf>,
    /// Lower map q of an interlaced pair, with --pairmap as p.
    #[arg(long)]
    q: Option<PathBuf>,
    #[arg(long)]
    interlaced: Option<PathBuf>,
    /// A built-in (semigroup, pseudo-norm) fixture, instead of files.
    #[arg(long)]
    fixture: Option<String>,
}

/// Outcome of a command: what to print and how to exit.
pub struct Outcome {
    pub stdout: String,
    pub passed: bool,
}

pub fn read(path: &Path) -> semnorm::Result<String> {
    fs::read_to_string(path).map_err(|e| semnorm::Error::Format(format!("{}: {e}", path.display())))
}

pub fn write_or_print(out: Option<&Path>, text: &str) -> semnorm::Result<Option<String>> {
    match out {
        Some(p) => {
            fs::write(p, text).map_err(|e| semnorm::Error::Format(format!("{}: {e}", p.display())))?;
            Ok(None)
        }
        None => Ok(Some(text.to_string())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(o) => {
            print!("{}", o.stdout);
            ExitCode::from(if o.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
