//! Document format and the `plectic` command line.

mod document;
mod lexer;
mod parser;
mod run;

pub use document::{field_source, form_source, Command, CoverDecl, Document, LocalDecl, LocalKind, Object, Statement};
pub use parser::parse;
pub use run::run;

use std::fmt;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::report::Report;
use crate::suites::{self, SuiteConfig};

/// A syntax or resolution error at a 1-based source position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, msg: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            msg: msg.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Parser, Debug)]
#[command(
    name = "plectic",
    version,
    about = "Exact verification of 2-plectic and Courant algebroid identities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Mode,
    /// Tab-separated output: status, check id, anchor, residual.
    #[arg(long, global = true)]
    pub machine: bool,
    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Maximum polynomial degree of generated data.
    #[arg(long = "max-degree", global = true, default_value_t = 3)]
    pub max_degree: u32,
}

#[derive(Subcommand, Debug)]
pub enum Mode {
    /// Run the commands of a document file.
    Run { file: PathBuf },
    /// Run a randomized property suite.
    Suite {
        /// One of the names printed by `plectic suite list`.
        name: String,
        /// Number of random instances.
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
    /// Parse a document and print it in canonical form.
    Fmt { file: PathBuf },
}

/// Runs the command line; returns the process exit code.
pub fn main_with(cli: Cli) -> i32 {
    match cli.command {
        Mode::Run { ref file } => {
            let src = match std::fs::read_to_string(file) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("{}: {e}", file.display());
                    return 2;
                }
            };
            let doc = match parse(&src) {
                Ok(d) => d,
                Err(e) => {
                    eprintln!("{}: {e}", file.display());
                    return 2;
                }
            };
            emit(&run(&doc, cli.jobs), cli.machine)
        }
        Mode::Suite { ref name, count } => {
            if name == "list" {
                for n in suites::NAMES {
                    println!("{n}");
                }
                return 0;
            }
            let cfg = SuiteConfig {
                seed: cli.seed,
                count,
                max_degree: cli.max_degree,
            };
            let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build();
            let result = match pool {
                Ok(pool) => pool.install(|| suites::run_suite(name, &cfg)),
                Err(_) => suites::run_suite(name, &cfg),
            };
            let Some(report) = result else {
                eprintln!("unknown suite `{name}`; try `plectic suite list`");
                return 2;
            };
            if !cli.machine {
                println!(
                    "suite {name}, seed {}, {count} instances, max degree {}",
                    cfg.seed, cfg.max_degree
                );
            }
            emit(&report, cli.machine)
        }
        Mode::Fmt { ref file } => match std::fs::read_to_string(file)
            .map_err(|e| e.to_string())
            .and_then(|s| parse(&s).map_err(|e| e.to_string()))
        {
            Ok(d) => {
                print!("{}", d.to_source());
                0
            }
            Err(e) => {
                eprintln!("{}: {e}", file.display());
                2
            }
        },
    }
}

fn emit(report: &Report, machine: bool) -> i32 {
    if machine {
        print!("{}", report.machine_text());
    } else {
        print!("{}", report.human_text());
    }
    i32::from(!report.passed())
}
