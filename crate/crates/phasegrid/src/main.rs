//! Thin command-line front end over the library: parse flags, load and
//! validate the config, dispatch to a report command, and map errors to
//! exit codes (0 success, 1 config error, 2 numerical failure).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use phasegrid::{cmd_basis_dump, cmd_converge, cmd_prune_scan, cmd_solve, ExperimentConfig};

#[derive(Parser)]
#[command(
    name = "phasegrid",
    version,
    about = "Phase-space-localized bases contracted through DVR grids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one experiment: direct spectrum plus requested representations.
    Solve {
        /// Experiment config (TOML).
        #[arg(long)]
        config: PathBuf,
        /// Output directory for solve.csv.
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Error-vs-N sweep over basis.n_list (needs at least two sizes).
    Converge {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Accuracy vs retained fraction, symmetric and two-sided side by side.
    PruneScan {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Dump bare and contracted lattice-function traces on a plot grid.
    BasisDump {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Lattice indices to dump (comma separated); defaults include a
        /// boundary-adjacent function.
        #[arg(long, value_delimiter = ',')]
        indices: Option<Vec<usize>>,
        /// Plot grid size (default 1001).
        #[arg(long)]
        plot_points: Option<usize>,
    },
}

fn run(cli: Cli) -> phasegrid::Result<()> {
    match cli.command {
        Command::Solve { config, out } => {
            let cfg = ExperimentConfig::from_path(&config)?;
            let path = cmd_solve(&cfg, &out)?;
            println!("wrote {}", path.display());
        }
        Command::Converge { config, out } => {
            let cfg = ExperimentConfig::from_path(&config)?;
            let path = cmd_converge(&cfg, &out)?;
            println!("wrote {}", path.display());
        }
        Command::PruneScan { config, out } => {
            let cfg = ExperimentConfig::from_path(&config)?;
            let path = cmd_prune_scan(&cfg, &out)?;
            println!("wrote {}", path.display());
        }
        Command::BasisDump {
            config,
            out,
            indices,
            plot_points,
        } => {
            let cfg = ExperimentConfig::from_path(&config)?;
            let paths = cmd_basis_dump(&cfg, &out, indices.as_deref(), plot_points)?;
            for path in paths {
                println!("wrote {}", path.display());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
