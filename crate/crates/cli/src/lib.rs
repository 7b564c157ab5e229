//! `hypereig` command line: argument parsing, dispatch and exit codes.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod render;

pub use commands::ComponentReport;

/// Exit status for success.
pub const EXIT_OK: i32 = 0;
/// Exit status for bad arguments, unreadable or malformed input.
pub const EXIT_INVALID: i32 = 1;
/// Exit status for a failed internal consistency check.
pub const EXIT_BREACH: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] hypereig::Error),
    #[error("{path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("write failed: {0}")]
    Write(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(hypereig::Error::InvariantBreach(_)) => EXIT_BREACH,
            _ => EXIT_INVALID,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EnumerateKind {
    Laplacian,
    Signless,
    EvenBip,
    OddBip,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    Laplacian,
    Signless,
}

impl From<VerifyKind> for hypereig::EigenKind {
    fn from(kind: VerifyKind) -> Self {
        match kind {
            VerifyKind::Laplacian => hypereig::EigenKind::Laplacian,
            VerifyKind::Signless => hypereig::EigenKind::Signless,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "hypereig",
    version,
    about = "Zero-eigenvalue analysis of uniform hypergraph Laplacians"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count first eigenvectors and decide odd-colorability and odd-bipartiteness.
    Analyze {
        /// Hypergraph file, or `-` for standard input.
        input: String,
    },
    /// List first eigenvectors (as exponent vectors) or bipartitions.
    Enumerate {
        input: String,
        #[arg(long, value_enum)]
        kind: EnumerateKind,
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        cap: u64,
    },
    /// Smith normal form of the incidence matrix.
    Snf {
        input: String,
        /// Modulus for the reduced invariant divisors; defaults to the uniformity.
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// Write a generated hypergraph in the file format.
    Generate {
        #[command(subcommand)]
        family: Generator,
    },
    /// Check an exponent vector exactly and through the tensor residual.
    Verify {
        input: String,
        /// Comma-separated exponents, first entry 0.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, value_enum)]
        kind: VerifyKind,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Compare solver counts with exhaustive counts on random hypergraphs.
    Oracle {
        #[arg(long)]
        random: usize,
        #[arg(long = "max-n")]
        max_n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum Generator {
    /// All m-subsets of n vertices.
    Complete { n: usize, m: usize },
    /// Cored hyperstar with t edges through one center.
    Star { t: usize, m: usize },
    /// m-th power of a graph file (uniformity 2).
    Power { graph: String, m: usize },
}

/// Runs the command line and returns the process exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            if informational {
                let _ = write!(stdout, "{}", e.render());
                return EXIT_OK;
            }
            let _ = write!(stderr, "{}", e.render());
            return EXIT_INVALID;
        }
    };
    match commands::dispatch(&cli, stdin, stdout) {
        Ok(code) => code,
        Err(CliError::Write(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
