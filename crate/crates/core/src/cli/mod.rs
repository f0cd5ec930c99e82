//! The `gnq` command line: argument parsing, ring files, and reports.

mod commands;
mod io;
mod report;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::ring::AxiomReport;

pub use io::{parse_ring_file, parse_ring_str, read_ring_file, resolve_ring, save_ring_file, ParseError, RingFile};
pub use report::{Body, Outcome, Report, Section};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("{path}: axioms fail: {report}")]
    Axioms { path: String, report: AxiomReport },
    #[error("io error: {0}")]
    Io(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "gnq", version, about = "Exact fusion-ring toolkit")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the fusion ring axioms.
    Verify { ring: String },
    /// Dimensions, invertibles, orbits, gradings, nilpotency and profile.
    Analyze { ring: String },
    /// Build a ring and optionally save it.
    Construct {
        #[command(subcommand)]
        what: ConstructKind,
        #[arg(long, global = true)]
        out: Option<std::path::PathBuf>,
    },
    /// Search for a basis-preserving isomorphism.
    Iso { a: String, b: String },
    /// Run the bounded classification with irrational global dimension.
    ClassifyIrrational {
        #[arg(long, default_value_t = 8)]
        kmax: u32,
        #[arg(long, default_value_t = 8)]
        hmax: u32,
        #[arg(long, default_value_t = 16)]
        gmax: u32,
    },
    /// Place one generalized near-group ring in the classification.
    Classify { ring: String },
    /// Enumerate generalized near-group rings over an abelian group.
    Enumerate {
        /// Abelian group, e.g. `C2xC2`.
        #[arg(long)]
        group: String,
        /// `all`, `trivial`, or generator tuples like `(1,0);(0,1)`.
        #[arg(long, default_value = "trivial")]
        subgroup: String,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        h: Option<u32>,
        /// Multiplicity `r` of noninvertibles in `x x*`, instead of `k` and `h`.
        #[arg(long)]
        r: Option<u32>,
        #[arg(long, default_value_t = 2)]
        mult_bound: u32,
    },
    /// De-equivariantize a pre-metric group by an isotropic subgroup.
    Deq {
        premetric: std::path::PathBuf,
        /// Generator tuples like `(2);(0)`.
        #[arg(long)]
        subgroup: String,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// S-matrix, centralizers and twist constraints for a premodular datum.
    PremodularCheck { ring: String, datum: std::path::PathBuf },
    /// Match nilpotent rings against `R(m,n) × ZK`.
    ConjectureReport {
        #[arg(long, default_value_t = 8)]
        gmax: usize,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
    },
    /// Built-in rings.
    Catalog {
        #[command(subcommand)]
        what: Option<CatalogKind>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ConstructKind {
    /// Group ring `Z[G]`.
    Group { group: String },
    /// Near-group ring `R(G, l)`.
    NearGroup { group: String, ell: u32 },
    /// `R(m, n)`.
    Rmn { m: u32, n: u32 },
    /// Direct product of two rings.
    Product { a: String, b: String },
}

#[derive(Debug, Subcommand)]
pub enum CatalogKind {
    List,
    Show { name: String },
}

/// What a command printed, and its exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run_command<I, T>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CommandOutput { code, stdout: text, stderr: String::new() }
            } else {
                CommandOutput { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let format = cli.format;
    match commands::dispatch(cli.command) {
        Ok(report) => CommandOutput {
            code: report.outcome.exit_code(),
            stdout: render(&report, format),
            stderr: String::new(),
        },
        Err(e) => {
            let mut report = Report::new("error").outcome(Outcome::Error);
            report.text("message", e.to_string());
            if let CliError::Parse(p) = &e {
                report.detail("location", p);
            }
            if let CliError::Axioms { report: axioms, .. } = &e {
                report.detail("violations", axioms);
            }
            let (stdout, stderr) = match format {
                Format::Json => (report.to_json(), String::new()),
                Format::Text => (String::new(), format!("error: {e}\n")),
            };
            CommandOutput { code: 2, stdout, stderr }
        }
    }
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    }
}
