//! Command-line front end for `pbw-core`: read a presentation, run one
//! computation or check suite, and report in text or JSON.
//!
//! Exit codes: 0 success, 1 a check failed, 2 input error, 3 the oracle
//! could not answer a bracket the computation needed.

mod commands;
pub mod presentation;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub use presentation::{parse_presentation, Presentation};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Input(String),
    #[error("bracket [{0}, {1}] is not determined by the oracle")]
    OracleIncomplete(String, String),
    #[error(transparent)]
    Core(#[from] pbw_core::Error),
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            CliError::OracleIncomplete(..)
            | CliError::Core(pbw_core::Error::OracleIncomplete { .. }) => Status::OracleIncomplete,
            _ => Status::InputError,
        }
    }

    /// Spells letters in the presentation's own generator names.
    fn named(self, names: &pbw_core::Alphabet) -> Self {
        match self {
            CliError::Core(pbw_core::Error::OracleIncomplete { left, right }) => {
                CliError::OracleIncomplete(names.render_letter(left), names.render_letter(right))
            }
            e => e,
        }
    }

    fn location(&self) -> serde_json::Value {
        match self {
            CliError::Syntax { line, .. } => serde_json::json!({ "line": line }),
            CliError::Core(pbw_core::Error::Parse { offset, .. }) => {
                serde_json::json!({ "offset": offset })
            }
            _ => serde_json::Value::Null,
        }
    }
}

/// Outcome of a run, in exit-code order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    Failed,
    InputError,
    OracleIncomplete,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::InputError => 2,
            Status::OracleIncomplete => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Identity {
    Eq3,
    Eq4,
    Eq5,
    Rb,
    Assoc,
    Dendriform,
    Envelope,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    Nf { expr: String },
    Basis { count_only: bool },
    Closure,
    CheckGs { perturb: bool, all_records: bool },
    CheckIdentities { which: Identity },
    CheckDoubling,
}

/// Size limits shared by the subcommands; each uses the ones it needs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub max_degree: u32,
    pub max_breadth: u32,
    pub max_rdeg: u32,
    pub max_level: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: 4,
            max_breadth: 3,
            max_rdeg: 2,
            max_level: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub presentation: PathBuf,
    pub command: Command,
    pub limits: Limits,
    pub trials: usize,
    pub seed: u64,
    pub format: Format,
}

impl RunConfig {
    fn check(&self) -> Result<(), CliError> {
        let l = &self.limits;
        if l.max_degree == 0 || l.max_breadth == 0 || self.trials == 0 {
            return Err(CliError::Input(
                "degree, breadth and trial bounds must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Rewriting and PBW bases for enveloping algebras of pre- and post-Lie
/// algebras.
#[derive(Debug, Parser)]
#[command(name = "pbw", version)]
pub struct Cli {
    /// Presentation file.
    pub presentation: PathBuf,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Normal form of an expression.
    Nf {
        #[arg(long)]
        expr: String,
    },
    /// The basis words by degree.
    Basis {
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        /// Print only the number of words per degree.
        #[arg(long)]
        count_only: bool,
    },
    /// Closure of the basis under the operations, and dimension agreement.
    Closure {
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
    },
    #[command(subcommand)]
    Check(CheckCommand),
}

#[derive(Debug, Subcommand)]
pub enum CheckCommand {
    /// Normalize every composition within the bounds.
    Gs {
        #[arg(long, default_value_t = 3)]
        max_breadth: u32,
        #[arg(long, default_value_t = 2)]
        max_rdeg: u32,
        #[arg(long, default_value_t = 1)]
        max_level: u32,
        /// List every composition, not only the failing ones.
        #[arg(long)]
        all: bool,
        /// Corrupt the Rota-Baxter relations (negative control).
        #[arg(long, hide = true)]
        perturb: bool,
    },
    /// Evaluate an identity family.
    Identities {
        #[arg(long, value_enum)]
        which: Identity,
        #[command(flatten)]
        random: Randomized,
        /// Highest level of the letters used by eq3.
        #[arg(long, default_value_t = 1)]
        max_level: u32,
    },
    /// Check the doubling construction on this and random algebras.
    Doubling {
        #[command(flatten)]
        random: Randomized,
    },
}

#[derive(Debug, Args)]
pub struct Randomized {
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        let mut limits = Limits::default();
        let (mut trials, mut seed) = (100, 1);
        let command = match cli.command {
            CliCommand::Nf { expr } => Command::Nf { expr },
            CliCommand::Basis {
                max_degree,
                count_only,
            } => {
                limits.max_degree = max_degree;
                Command::Basis { count_only }
            }
            CliCommand::Closure { max_degree } => {
                limits.max_degree = max_degree;
                Command::Closure
            }
            CliCommand::Check(CheckCommand::Gs {
                max_breadth,
                max_rdeg,
                max_level,
                all,
                perturb,
            }) => {
                limits = Limits {
                    max_breadth,
                    max_rdeg,
                    max_level,
                    ..limits
                };
                Command::CheckGs {
                    perturb,
                    all_records: all,
                }
            }
            CliCommand::Check(CheckCommand::Identities {
                which,
                random,
                max_level,
            }) => {
                (trials, seed) = (random.trials, random.seed);
                limits.max_level = max_level;
                Command::CheckIdentities { which }
            }
            CliCommand::Check(CheckCommand::Doubling { random }) => {
                (trials, seed) = (random.trials, random.seed);
                Command::CheckDoubling
            }
        };
        RunConfig {
            presentation: cli.presentation,
            command,
            limits,
            trials,
            seed,
            format: if cli.json { Format::Json } else { Format::Text },
        }
    }
}

/// A finished run: what to print and how to exit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: Status,
    pub output: String,
}

/// A command's result before formatting.
pub(crate) struct Report {
    pub status: Status,
    pub text: String,
    pub json: serde_json::Value,
}

pub fn run(config: &RunConfig) -> Outcome {
    let text = std::fs::read_to_string(&config.presentation).map_err(|source| CliError::Io {
        path: config.presentation.clone(),
        source,
    });
    match text {
        Ok(text) => run_on(config, &text),
        Err(e) => failure(config, &e),
    }
}

/// Runs `config` against presentation source already in memory.
pub fn run_on(config: &RunConfig, presentation: &str) -> Outcome {
    let report = config
        .check()
        .and_then(|()| parse_presentation(presentation))
        .and_then(|p| commands::dispatch(config, &p).map_err(|e| e.named(p.algebra.gens())));
    match report {
        Ok(r) => Outcome {
            status: r.status,
            output: match config.format {
                Format::Text => r.text,
                Format::Json => json_output(config, r.status, r.json),
            },
        },
        Err(e) => failure(config, &e),
    }
}

fn failure(config: &RunConfig, e: &CliError) -> Outcome {
    let status = e.status();
    let output = match config.format {
        Format::Text => format!("error: {e}\n"),
        Format::Json => json_output(
            config,
            status,
            serde_json::json!({ "error": e.to_string(), "location": e.location() }),
        ),
    };
    Outcome { status, output }
}

fn json_output(config: &RunConfig, status: Status, result: serde_json::Value) -> String {
    let doc = serde_json::json!({
        "config": config,
        "status": status,
        "result": result,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
    s.push('\n');
    s
}
