use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use csh_core::diagnostics::DEFAULT_EPSILON;
use csh_core::io::{self, RunConfig, RunOptions};
use csh_core::model::Potential;
use csh_core::{Error, Result};

#[derive(Parser)]
#[command(name = "csh", version, about = "Chern-Simons-Higgs simulator on the periodic square")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Output directory (overrides `output.dir`).
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Seed override for random initial data, gauge functions and batches.
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    /// Suppress the summary on stdout.
    #[arg(long)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve the configured initial data and write diagnostics.
    Run {
        config: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Estimate-lab batch over seeded free waves.
    Estimates {
        config: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Gauge covariance experiment.
    GaugeDemo {
        config: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Constraint and energy report for a snapshot.
    Check {
        snapshot: PathBuf,
        /// Potential coefficients `c1,c2,...` of `V(r) = sum c_k r^k`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0,1")]
        potential: Vec<f64>,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        #[arg(long)]
        quiet: bool,
    },
}

fn load(path: &Path, common: &Common) -> Result<(RunConfig, RunOptions)> {
    let text = std::fs::read_to_string(path)?;
    let mut config = io::parse_config(&text)?;
    if let Some(seed) = common.seed {
        config = config.with_seed(seed);
    }
    let opts = RunOptions {
        out: common.out.clone(),
        quiet: common.quiet,
    };
    Ok((config, opts))
}

fn dispatch(cmd: Command) -> Result<()> {
    match cmd {
        Command::Run { config, common } => {
            let (config, opts) = load(&config, &common)?;
            io::run(&config, &opts).map(|_| ())
        }
        Command::Estimates { config, common } => {
            let (config, opts) = load(&config, &common)?;
            io::run_estimates(&config, &opts).map(|_| ())
        }
        Command::GaugeDemo { config, common } => {
            let (config, opts) = load(&config, &common)?;
            io::gauge_demo(&config, &opts).map(|_| ())
        }
        Command::Check {
            snapshot,
            potential,
            epsilon,
            quiet,
        } => {
            let v = Potential::new(potential, 0.0)?;
            let r = io::check_snapshot(&snapshot, &v, epsilon)?;
            if !quiet {
                println!("t: {:.16e}", r.t);
                println!("energy: {:.16e}", r.energy);
                println!("constraint_l2: {:.6e}", r.constraint_l2);
                println!("I: {:.16e}", r.i_functional);
                println!("phi_l2: {:.16e}", r.phi_l2);
                println!("phi_h1: {:.16e}", r.phi_h1);
                println!("phit_l2: {:.16e}", r.phit_l2);
                println!("acf_norm: {:.16e}", r.acf_norm);
                println!("adf_norm: {:.16e}", r.adf_norm);
            }
            if r.is_finite() {
                Ok(())
            } else {
                Err(Error::Format("snapshot holds non-finite values".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = dispatch(cli.command);
    if let Err(e) = &outcome {
        eprintln!("csh: {e}");
    }
    ExitCode::from(io::exit_code(&outcome) as u8)
}
