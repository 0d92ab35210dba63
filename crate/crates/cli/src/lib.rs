//! `tickwalk`: tables for the cost, risk and fill probability of a
//! resting limit order under a symmetric random-walk price.
//!
//! Exit codes: 0 success, 1 validation error, 2 verification mismatch.

pub mod builders;
pub mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use table::{Format, Table};
use tickwalk::{sim, Scenario};

pub const EXIT_VALIDATION: u8 = 1;
pub const EXIT_MISMATCH: u8 = 2;

#[derive(Parser)]
#[command(
    name = "tickwalk",
    version,
    about = "Execution analytics for a resting limit order under a symmetric random-walk price"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execution-price distribution for one scenario
    Dist(DistCmd),
    /// Cost branches and net gain over a range of levels
    Cost(GridCmd),
    /// Exact and capped-approximate execution variance over a range of levels
    Variance(GridCmd),
    /// Fill probability: exact lattice and erf forms
    Fillprob(FillprobCmd),
    /// Seeded Monte Carlo estimates for one scenario
    Simulate(SimulateCmd),
    /// Cross-check the closed forms against the 2^n enumeration oracle
    Verify(VerifyCmd),
}

#[derive(Args)]
struct OutputOpts {
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write the table to PATH instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DistCmd {
    /// Walk length (price steps in the slice)
    #[arg(long)]
    n: u32,
    /// Tick distance from the start price to the resting order
    #[arg(long)]
    k: u32,
    /// Bump n by one when n and k share parity
    #[arg(long)]
    parity_bump: bool,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct GridCmd {
    /// Walk length (price steps in the slice)
    #[arg(long)]
    n: u32,
    /// Emit levels 0..=K_MAX (defaults to n)
    #[arg(long)]
    k_max: Option<u32>,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct FillprobCmd {
    /// Walk length for the lattice mode
    #[arg(long)]
    n: Option<u32>,
    /// Single level for the lattice mode
    #[arg(long, conflicts_with = "k_max")]
    k: Option<u32>,
    /// Emit levels 0..=K_MAX in the lattice mode
    #[arg(long)]
    k_max: Option<u32>,
    /// Limit distance in absolute price units (time mode)
    #[arg(long, value_name = "PRICE")]
    k_abs: Option<f64>,
    /// Price dispersion over one sample time (time mode)
    #[arg(long)]
    sigma: Option<f64>,
    /// Horizon in units of the sample time (time mode)
    #[arg(long)]
    tau: Option<f64>,
    /// Bump n by one when n and k share parity
    #[arg(long)]
    parity_bump: bool,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct SimulateCmd {
    /// Walk length (price steps in the slice)
    #[arg(long)]
    n: u32,
    /// Tick distance from the start price to the resting order
    #[arg(long)]
    k: u32,
    /// Number of simulated paths
    #[arg(long, default_value_t = 1_000_000)]
    paths: u64,
    /// RNG seed; identical seeds reproduce the report bit for bit
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct VerifyCmd {
    /// Check every scenario with n up to this bound
    #[arg(long)]
    n_max: u32,
}

pub fn run() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                print!("{err}");
                return ExitCode::SUCCESS;
            }
            // collapse clap's multi-line report into one diagnostic line
            let rendered = err.to_string();
            let mut parts = Vec::new();
            for line in rendered.lines() {
                let line = line.trim();
                if line.starts_with("Usage:") {
                    break;
                }
                if !line.is_empty() {
                    parts.push(line);
                }
            }
            if parts.is_empty() {
                parts.push("error: invalid arguments");
            }
            eprintln!("{} (run with --help for usage)", parts.join(" "));
            return ExitCode::from(EXIT_VALIDATION);
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_VALIDATION)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Dist(cmd) => {
            let n = bump_parity(cmd.n, cmd.k, cmd.parity_bump);
            let scenario = scenario(n, cmd.k)?;
            if scenario.k() == 0 {
                return Err("dist needs a resting order: k must be at least 1".into());
            }
            emit(builders::dist_table(scenario), &cmd.output)
        }
        Command::Cost(cmd) => {
            let k_max = grid_k_max(&cmd)?;
            emit(builders::cost_table(cmd.n, k_max), &cmd.output)
        }
        Command::Variance(cmd) => {
            let k_max = grid_k_max(&cmd)?;
            emit(builders::variance_table(cmd.n, k_max), &cmd.output)
        }
        Command::Fillprob(cmd) => {
            let table = fillprob_table(&cmd)?;
            emit(table, &cmd.output)
        }
        Command::Simulate(cmd) => {
            let scenario = scenario(cmd.n, cmd.k)?;
            let table = builders::simulate_table(scenario, cmd.paths, cmd.seed)?;
            emit(table, &cmd.output)
        }
        Command::Verify(cmd) => run_verify(&cmd),
    }
}

fn scenario(n: u32, k: u32) -> Result<Scenario, String> {
    Scenario::new(n, k).map_err(|e| e.to_string())
}

fn bump_parity(n: u32, k: u32, enabled: bool) -> u32 {
    if enabled && n % 2 == k % 2 {
        n + 1
    } else {
        n
    }
}

fn grid_k_max(cmd: &GridCmd) -> Result<u32, String> {
    let k_max = cmd.k_max.unwrap_or(cmd.n);
    scenario(cmd.n, k_max)?;
    Ok(k_max)
}

fn fillprob_table(cmd: &FillprobCmd) -> Result<Table, String> {
    let lattice = cmd.n.is_some() || cmd.k.is_some() || cmd.k_max.is_some() || cmd.parity_bump;
    let timed = cmd.k_abs.is_some() || cmd.sigma.is_some() || cmd.tau.is_some();
    if lattice && timed {
        return Err(
            "choose one mode: lattice (--n with --k or --k-max) or time (--k-abs --sigma --tau)"
                .into(),
        );
    }
    if timed {
        let (Some(k_abs), Some(sigma), Some(tau)) = (cmd.k_abs, cmd.sigma, cmd.tau) else {
            return Err("time mode needs --k-abs, --sigma and --tau".into());
        };
        return builders::fillprob_time_table(k_abs, sigma, tau);
    }
    let Some(n) = cmd.n else {
        return Err(
            "fillprob needs --n (lattice mode) or --k-abs --sigma --tau (time mode)".into(),
        );
    };
    match (cmd.k, cmd.k_max) {
        (Some(k), None) => {
            let n = bump_parity(n, k, cmd.parity_bump);
            scenario(n, k)?;
            Ok(builders::fillprob_lattice_table(n, &[k]))
        }
        (None, Some(k_max)) => {
            if cmd.parity_bump {
                return Err("--parity-bump needs a single --k".into());
            }
            scenario(n, k_max)?;
            let ks: Vec<u32> = (0..=k_max).collect();
            Ok(builders::fillprob_lattice_table(n, &ks))
        }
        (None, None) => Err("lattice mode needs --k or --k-max".into()),
        (Some(_), Some(_)) => unreachable!("clap rejects --k with --k-max"),
    }
}

fn emit(table: Table, output: &OutputOpts) -> Result<ExitCode, String> {
    let text = table.render(output.format);
    match &output.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn run_verify(cmd: &VerifyCmd) -> Result<ExitCode, String> {
    if cmd.n_max == 0 {
        return Err("--n-max must be at least 1".into());
    }
    if cmd.n_max > sim::DEFAULT_ENUM_BUDGET {
        return Err(format!(
            "--n-max {} exceeds the 2^{} enumeration budget",
            cmd.n_max,
            sim::DEFAULT_ENUM_BUDGET
        ));
    }
    match builders::verify_scenarios(cmd.n_max, |n| println!("n={n} ok ({} levels)", n + 1)) {
        None => {
            println!(
                "verified n <= {}: closed forms match the enumeration oracle",
                cmd.n_max
            );
            Ok(ExitCode::SUCCESS)
        }
        Some(m) => {
            eprintln!(
                "mismatch at n={} k={} field={}: enumerator {}, closed form {}",
                m.n, m.k, m.field, m.expected, m.actual
            );
            Ok(ExitCode::from(EXIT_MISMATCH))
        }
    }
}
