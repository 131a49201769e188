//! `lacdhva` binary: validate a configuration, tabulate the level spectrum
//! or run an inverse-field sweep.
//!
//! Exit codes: 0 success, 1 validation failure, 2 config error, 3 I/O error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use lacdhva::cli::{self, RunConfig};
use lacdhva::constants::load_constants;
use lacdhva::Error;

#[derive(Parser)]
#[command(
    name = "lacdhva",
    about = "Synthetic-field Landau levels and dHvA oscillations for neutral atoms",
    version
)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the configuration and compare the analytic spectrum against
    /// the finite-difference solver.
    Validate {
        /// Path to a key=value run configuration.
        #[arg(long)]
        config: PathBuf,
        /// Output directory (defaults to output.dir from the config).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate eigenvalues over (sigma, n_xi, m) into spectrum.csv.
    Spectrum {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Largest radial quantum number n_xi.
        #[arg(long, default_value_t = 3)]
        n_max: u32,
        /// Largest |m|.
        #[arg(long, default_value_t = 3)]
        m_max: u32,
    },
    /// Sweep 1/B and emit figure1-3 CSV datasets plus analysis.json.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Config(_)
        | Error::Domain(_)
        | Error::Precondition(_)
        | Error::InsufficientData(_) => 2,
        Error::Io(_) => 3,
        Error::Numeric(_) => 1,
    }
}

fn load(config: &Path) -> Result<RunConfig, Error> {
    cli::load_run_config(config)
}

fn run() -> Result<u8, Error> {
    let args = Args::parse();
    let consts = load_constants();
    match args.command {
        Command::Validate { config, out } => {
            let run = load(&config)?;
            let out_dir = out.unwrap_or_else(|| run.out_dir.clone());
            let outcome = cli::cmd_validate(&run, &consts, &out_dir)?;
            print!("{}", outcome.text);
            Ok(if outcome.passed { 0 } else { 1 })
        }
        Command::Spectrum {
            config,
            out,
            n_max,
            m_max,
        } => {
            let run = load(&config)?;
            let out_dir = out.unwrap_or_else(|| run.out_dir.clone());
            cli::cmd_spectrum(&run, &consts, n_max, m_max, &out_dir)?;
            println!("wrote {}", out_dir.join("spectrum.csv").display());
            Ok(0)
        }
        Command::Sweep { config, out } => {
            let run = load(&config)?;
            let out_dir = out.unwrap_or_else(|| run.out_dir.clone());
            let analysis = cli::cmd_sweep(&run, &consts, &out_dir)?;
            println!(
                "wrote figure1.csv figure2.csv figure3.csv analysis.json to {}",
                out_dir.display()
            );
            match &analysis.period {
                Some(p) => println!(
                    "period = {} 1/T_eff over {} boundaries",
                    cli::fmt_sci(p.period),
                    analysis.jumps.len()
                ),
                None => println!("fewer than two boundaries in range; no period extracted"),
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
