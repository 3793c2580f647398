use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod config;
mod output;

use config::{Format, Overrides, RunConfig};
use output::Table;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Numerical(#[from] dampedosc::Error),
    #[error("{0}")]
    Io(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) | CliError::Io(_) => 1,
        }
    }
}

/// Thermodynamics of a quantum oscillator strongly coupled to an Ohmic bath.
///
/// Parameters come from the built-in preset, then an optional config file,
/// then command-line flags. Output is CSV unless `--format svg` is given.
#[derive(Debug, Parser)]
#[command(name = "dampedosc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    overrides: Overrides,

    /// Plain key = value file with any of the settings above
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output file (stdout if omitted)
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Allow T = 0 in `point`, using the exact ground-state limit
    #[arg(long, global = true)]
    exact_limit: bool,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// State, processes and Landauer check at one temperature
    Point,
    /// Δ^(M), Δ and its low-temperature expression over the grid
    Figure1,
    /// Heat and entropy of coupling and of the mass variation over the grid
    Figure2,
    /// Finite-bath normal-mode oracle against the closed forms
    Oracle,
    /// Every `point` column over the grid
    Sweep,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(cli.overrides, cli.config.as_deref(), cli.out, cli.exact_limit)?;
    let (table, title): (Table, &str) = match cli.command {
        Command::Point => (commands::point(&cfg)?, "point"),
        Command::Figure1 => (commands::figure1(&cfg)?, "Clausius deficit vs temperature"),
        Command::Figure2 => (commands::figure2(&cfg)?, "Heat and entropy change vs temperature"),
        Command::Oracle => (commands::oracle(&cfg)?, "oracle"),
        Command::Sweep => (commands::sweep(&cfg)?, "sweep"),
    };
    let text = match cfg.format {
        Format::Csv => output::to_csv(&table),
        Format::Svg => match cli.command {
            Command::Figure1 | Command::Figure2 => output::to_svg(&table, title),
            _ => {
                return Err(CliError::Usage(
                    "svg output is available for figure1 and figure2".into(),
                ))
            }
        },
    };
    match &cfg.out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
