//! Command-line front end: problem files in, deterministic JSON/CSV/text out.

pub mod commands;
pub mod output;
pub mod parser;
pub mod spec;

use std::ffi::OsString;
use std::fmt;

use clap::{Parser, Subcommand};

pub use output::Format;

#[derive(Parser, Debug)]
#[command(name = "coxgit", version, about = "Semi-invariants, GIT chambers and Cox rings of GIT quotients")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[arg(long, global = true)]
    pub max_degree: Option<u32>,

    #[arg(long, global = true)]
    pub max_sat_power: Option<u32>,

    /// Stability parameter, comma-separated; overrides the problem file.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub theta: Option<String>,

    /// Record the wall-clock time (seconds since the epoch) in the metadata.
    #[arg(long, global = true)]
    pub stamp: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Wall-and-chamber decomposition of the effective cone.
    Chambers {
        /// Problem file or preset name.
        problem: String,
    },
    /// Maximal θ-unstable coordinate strata and their codimensions.
    Unstable { problem: String },
    /// Lattice of characters that descend to the quotient.
    Descent { problem: String },
    /// Sections of one line bundle, as fractions over a witness.
    Sections {
        problem: String,
        /// The character, comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        chi: String,
        /// Index of the witness used as denominator.
        #[arg(long, default_value_t = 0)]
        witness: usize,
    },
    /// Graded dimensions of the Cox ring over a box of characters.
    Cox {
        problem: String,
        /// `lo..hi` for every coordinate, or one range per coordinate separated by commas.
        #[arg(long, allow_hyphen_values = true)]
        chi_box: String,
        /// Use the saturation path even when the codimension-two shortcut applies.
        #[arg(long)]
        oracle: bool,
    },
    /// Semi-invariants of a quiver with a unit vertex.
    QuiverSl {
        problem: String,
        /// Characters of the non-unit vertices.
        #[arg(long, allow_hyphen_values = true)]
        chi_box: String,
        /// Include bases in the JSON output.
        #[arg(long)]
        bases: bool,
    },
    /// det^θ-semi-invariants on the ADHM zero fibre.
    Adhm {
        problem: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        bases: bool,
    },
    /// Twisted pieces A^m of the Hilbert scheme Cox ring.
    Hilb {
        problem: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true, default_value = "-3..3")]
        m: String,
        /// Largest bidegree `a,b`.
        #[arg(long = "box", default_value = "4,4")]
        bidegree_box: String,
    },
    /// Compare ADHM semi-invariants with products of alternants through ε*.
    Verify {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    /// Exit status 1.
    Input(String),
    /// Exit status 2.
    Caps(String),
    /// Exit status 3.
    Invariant(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Caps(_) => 2,
            CliError::Invariant(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Caps(m) | CliError::Invariant(m) => f.write_str(m),
        }
    }
}

impl From<coxgit::Error> for CliError {
    fn from(e: coxgit::Error) -> Self {
        match e {
            coxgit::Error::RaiseCaps { .. } => CliError::Caps(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<spec::SpecError> for CliError {
    fn from(e: spec::SpecError) -> Self {
        CliError::Input(e.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: 1,
                }
            } else {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code: 0,
                }
            };
        }
    };
    match commands::execute(&cli) {
        Ok(mut report) => {
            if cli.stamp {
                let now = std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0);
                report.metadata.stamp = Some(now);
            }
            Outcome {
                stdout: report.render(cli.format),
                stderr: report.warnings.iter().map(|w| format!("warning: {w}\n")).collect(),
                code: report.code,
            }
        }
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.code(),
        },
    }
}
