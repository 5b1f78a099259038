//! Command-line front end for the `qdu` toolkit.

pub mod commands;
pub mod config;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use commands::{CliResult, HilbertPreset};
pub use config::{parse_config, print_config, AlgebraConfig, ConfigError};
pub use report::{Report, Verdict};

#[derive(Debug, Parser)]
#[command(
    name = "qdu",
    version,
    about = "Normal forms, Hilbert series and structure checks for quiver down-up algebras"
)]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every randomized probe.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Degree bound for enumerations and probes; each command has its own default.
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,
    /// Number of random trials for probes.
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form of an element, e.g. `--element "1 * d2.u2.u0 @0"`.
    Nf {
        config: PathBuf,
        #[arg(long)]
        element: String,
    },
    /// Normal words of one degree.
    Basis {
        config: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Dimension matrices per degree, optionally checked against the closed forms.
    Hilbert {
        config: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "qdu")]
        preset: HilbertPreset,
        #[arg(long)]
        check: bool,
    },
    /// Resolves every overlap ambiguity of the reduction system.
    Confluence { config: PathBuf },
    /// Decides graded isomorphism with another config.
    Iso {
        config: PathBuf,
        #[arg(long)]
        other: PathBuf,
    },
    /// Structure checks, one per subcommand.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Runs every applicable check.
    Report { config: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    Gwa {
        config: PathBuf,
    },
    Superpotential {
        config: PathBuf,
    },
    Nakayama {
        config: PathBuf,
    },
    Pwd {
        config: PathBuf,
    },
    Noetherian {
        config: PathBuf,
    },
    Properties {
        config: PathBuf,
    },
    /// Without a config, uses beta = -1 and alpha = gamma = 0 on `--n` vertices.
    Skewgroup {
        config: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
    },
}

pub fn run(cli: &Cli) -> CliResult<Report> {
    use commands::*;
    let opts = Options { seed: cli.seed, max_degree: cli.max_degree, trials: cli.trials };
    match &cli.command {
        Command::Nf { config, element } => nf(&load_params(config)?, element, &opts),
        Command::Basis { config, degree } => basis(&load_params(config)?, *degree, &opts),
        Command::Hilbert { config, n, preset, check } => {
            hilbert(&params_or_default(config.as_ref(), *n)?, *preset, *check, &opts)
        }
        Command::Confluence { config } => confluence(&load_params(config)?, &opts),
        Command::Iso { config, other } => iso(&load_params(config)?, &load_params(other)?, &opts),
        Command::Report { config } => report(&load_params(config)?, &opts),
        Command::Verify(v) => match v {
            VerifyCommand::Gwa { config } => verify_gwa(&load_params(config)?, &opts),
            VerifyCommand::Superpotential { config } => verify_superpotential(&load_params(config)?, &opts),
            VerifyCommand::Nakayama { config } => verify_nakayama(&load_params(config)?, &opts),
            VerifyCommand::Pwd { config } => verify_pwd(&load_params(config)?, &opts),
            VerifyCommand::Noetherian { config } => verify_noetherian(&load_params(config)?, &opts),
            VerifyCommand::Properties { config } => verify_properties(&load_params(config)?, &opts),
            VerifyCommand::Skewgroup { config, n } => verify_skewgroup(&skewgroup_params(config.as_ref(), *n)?, &opts),
        },
    }
}
