//! Command-line front end. Exit codes: 0 success or agreement, 1 usage or I/O error,
//! 2 disagreement with a predicted value.

mod commands;
pub mod config;
pub mod golden;
pub mod record;
mod sweep;

use std::ffi::OsString;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{ArgAction, Args, Parser, Subcommand};
use thiserror::Error;

use crate::algebra::Field;
use config::{default_primes, fields_for, parse_range, validate_primes, ConfigError, Mode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DISAGREEMENT: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub(crate) fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

pub(crate) type Outcome = Result<i32, CliError>;

#[derive(Parser, Debug)]
#[command(
    name = "waring",
    version,
    about = "Double-point linear systems, secant dimensions and Waring uniqueness checks",
    disable_help_flag = true
)]
struct Cli {
    /// Print help
    #[arg(long, action = ArgAction::Help, global = true)]
    help: Option<bool>,
    #[command(subcommand)]
    command: Command,
}

/// Options shared by the measuring commands.
#[derive(Args, Debug, Clone)]
struct Common {
    /// A single prime modulus, replacing the prime list
    #[arg(long)]
    prime: Option<u64>,
    /// Random configurations per field (forms, for sylvester)
    #[arg(long, default_value_t = 3)]
    trials: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Mode::Prime)]
    mode: Mode,
    /// Append one JSON-lines record per field to this file
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn fields(&self, max_degree: u32) -> Result<Vec<Field>, CliError> {
        let primes = match self.prime {
            Some(p) => vec![p],
            None => default_primes()?
                .into_iter()
                .take(config::DEFAULT_PRIME_COUNT)
                .collect(),
        };
        if self.mode != Mode::Rational {
            validate_primes(&primes, max_degree)?;
        }
        if self.trials == 0 {
            return Err(usage("trials must be at least 1"));
        }
        Ok(fields_for(self.mode, &primes))
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Measure the dimension of G(d,n,l), or of H(d,n,l,h) when h > 0
    #[command(disable_help_flag = true)]
    Dims {
        #[arg(short)]
        d: u32,
        #[arg(short)]
        n: u32,
        #[arg(short)]
        l: u32,
        #[arg(short, default_value_t = 0)]
        h: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Scan a grid and compare every measured dimension with the expected count
    #[command(disable_help_flag = true)]
    AhVerify {
        #[arg(short, value_parser = parse_range)]
        d: RangeInclusive<u32>,
        #[arg(short, value_parser = parse_range)]
        n: RangeInclusive<u32>,
        /// Defaults to every l with expected dimension at least -(n+1)
        #[arg(short, value_parser = parse_range)]
        l: Option<RangeInclusive<u32>>,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate the degeneration conditions of H(d,n,l,h) and check them by rank
    #[command(disable_help_flag = true)]
    Win {
        #[arg(short)]
        d: u32,
        #[arg(short)]
        n: u32,
        #[arg(short)]
        l: u32,
        #[arg(short)]
        h: u32,
        /// Use the base-locus conditions even where the numerical rules apply
        #[arg(long)]
        dimbase: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Recompute the leftover-case table and compare it with the shipped copy
    #[command(disable_help_flag = true)]
    DeltaTable,
    /// Dimension of the k-secant variety of the Veronese, with the interpolation dual
    #[command(disable_help_flag = true)]
    Secant {
        #[arg(short)]
        d: u32,
        #[arg(short)]
        n: u32,
        #[arg(short)]
        k: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Singularities of a random member of G(d,n,l)
    #[command(disable_help_flag = true)]
    SingProbe {
        #[arg(short)]
        d: u32,
        #[arg(short)]
        n: u32,
        #[arg(short)]
        l: u32,
        /// Random plane sections tried for surfaces
        #[arg(long, default_value_t = 6)]
        slices: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Uniqueness verdict for general forms of degree d in n+1 variables
    #[command(disable_help_flag = true)]
    Uniqueness {
        #[arg(short)]
        d: u32,
        #[arg(short)]
        n: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Catalecticant certificates for random binary forms of odd degree d
    #[command(disable_help_flag = true)]
    Sylvester {
        #[arg(short)]
        d: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Run a parameter grid from a config file, appending JSON-lines records
    #[command(disable_help_flag = true)]
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config's `out`
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Summarize a record file and check the shipped tables
    #[command(disable_help_flag = true)]
    Report {
        /// Record file to summarize
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Dims { d, n, l, h, common } => commands::dims(out, d, n, l, h, &common),
        Command::AhVerify { d, n, l, common } => commands::ah_verify(out, d, n, l, &common),
        Command::Win {
            d,
            n,
            l,
            h,
            dimbase,
            common,
        } => commands::win(out, d, n, l, h, dimbase, &common),
        Command::DeltaTable => commands::delta_table(out),
        Command::Secant { d, n, k, common } => commands::secant(out, d, n, k, &common),
        Command::SingProbe {
            d,
            n,
            l,
            slices,
            common,
        } => commands::sing_probe(out, d, n, l, slices, &common),
        Command::Uniqueness { d, n, common } => commands::uniqueness(out, d, n, &common),
        Command::Sylvester { d, common } => commands::sylvester(out, d, &common),
        Command::Sweep { config, out: path } => sweep::sweep(out, &config, path),
        Command::Report { out: path } => commands::report(out, path.as_deref()),
    }
}
