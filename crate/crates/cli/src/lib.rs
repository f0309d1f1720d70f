//! Command-line front end: configuration files, presets, and the verbs that
//! turn them into CSV and JSON outputs.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod schema;
pub mod units;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use commands::{Options, Output, Verb};
pub use config::RunConfig;
pub use error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(name = "plasmosense", version, about = "Plasmonic optomechanics and mass-sensing simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// TOML configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory (default: `output_dir` from the config, else `.`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Built-in parameter set; overrides a `preset` key in the config.
    #[arg(long, global = true)]
    pub preset: Option<String>,
    /// Restrict the probe response to mode N.
    #[arg(long, global = true, value_name = "N")]
    pub mode: Option<u32>,
    /// Add a detuning column measured from the mode, `ω_n − ω_pr`.
    #[arg(long, global = true)]
    pub figure_axes: bool,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Command {
    /// Mode catalog: resonances, widths, mode volumes, couplings.
    Modes,
    /// Coupling spectra K_n over a frequency grid.
    Spectrum,
    /// Probe transmission spectra.
    Transmission,
    /// Peak statistics, mass resolution and Casimir estimate.
    Sense,
    /// Parameter sweep from the `[sweep]` section.
    Sweep,
    /// List built-in presets.
    Presets,
}

/// Runs a parsed command line and returns the paths written.
pub fn execute(cli: &Cli) -> Result<Vec<PathBuf>> {
    let verb = match cli.command {
        Command::Modes => Verb::Modes,
        Command::Spectrum => Verb::Spectrum,
        Command::Transmission => Verb::Transmission,
        Command::Sense => Verb::Sense,
        Command::Sweep => Verb::Sweep,
        Command::Presets => {
            for name in config::PRESET_NAMES {
                println!("{name}");
            }
            return Ok(vec![]);
        }
    };
    let mut cfg = config::load_file(cli.config.as_deref(), cli.preset.as_deref())?;
    let opts = Options { figure_axes: cli.figure_axes, mode: cli.mode };
    commands::apply_options(&mut cfg, &opts)?;
    let files = commands::run(&cfg, verb, &opts)?;
    for f in &files {
        schema::validate_output(&f.name, &f.contents)?;
    }
    let dir = cli.out.clone().or_else(|| cfg.output_dir.clone()).unwrap_or_else(|| PathBuf::from("."));
    commands::write_outputs(&dir, &files)
}
