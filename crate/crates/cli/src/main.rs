//! `concur`: multipartite-entanglement scenarios, shared-pump realizability
//! checks and quasi-phase-matching design from the command line.
//!
//! Exit codes: 0 success or realizable, 1 domain-negative result
//! (not realizable, no solution, verification failure), 2 configuration or
//! input error, 3 numerical error.

mod config;
mod plot;
mod qpm_cmd;
mod scenario;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use concur_core::format::fmt12;
use concur_core::{verify, Error};

use config::ScenarioConfig;
use qpm_cmd::QpmCommand;

/// Environment variable naming the default Sellmeier dataset file.
pub const DATASET_ENV: &str = "CONCUR_DATASET";

#[derive(Debug, Parser)]
#[command(name = "concur", version, about = "Concurrent-interaction CV entanglement and QPM design")]
struct Cli {
    /// Write the primary output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also write a standalone matplotlib script for the result.
    #[arg(long, global = true)]
    plot_script: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evolve the vacuum and tabulate joint-quadrature variances and witnesses.
    Evolve {
        #[arg(long)]
        config: PathBuf,
    },
    /// Eigenvalues, eigenvectors and squeezing class of the coupling matrix.
    Eigenmodes {
        #[arg(long)]
        config: PathBuf,
    },
    /// Can the scenario's signed coupling matrix be driven by shared pumps?
    Check {
        #[arg(long)]
        config: PathBuf,
    },
    /// Poling periods, tuning curves and concurrence searches.
    Qpm {
        /// Sellmeier dataset (TOML); default: the bundled RTA-class set.
        #[arg(long, env = DATASET_ENV)]
        dataset: Option<PathBuf>,
        #[command(subcommand)]
        command: QpmCommand,
    },
    /// Cross-check the Gaussian propagator against the Fock-space oracle.
    Verify {
        /// Only the one- and two-mode cases.
        #[arg(long)]
        quick: bool,
    },
}

/// Text for the primary output, the exit code, and an optional plot script.
pub struct Outcome {
    pub text: String,
    pub code: u8,
    pub plot: Option<String>,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidArgument(_) | Error::Parse(_) | Error::Unbalanceable { .. } => 2,
        Error::Range(_) | Error::Numeric(_) => 3,
        Error::NoSolution(_) => 1,
    }
}

fn run_verify(quick: bool) -> concur_core::Result<Outcome> {
    let report = verify::run_default(quick)?;
    let mut text = String::from("case,quadrature,kappa_t,gaussian,oracle,abs_error,converged,status\n");
    for c in &report.checks {
        let _ = writeln!(
            text,
            "{},{},{},{},{},{},{},{}",
            c.case,
            c.quadrature,
            fmt12(c.kappa_t),
            fmt12(c.gaussian),
            fmt12(c.oracle),
            fmt12(c.abs_error()),
            c.converged,
            if c.passed() { "ok" } else { "FAIL" }
        );
    }
    let passed = report.passed();
    let failed = report.checks.iter().filter(|c| !c.passed()).count();
    if let Some(w) = report.worst() {
        let _ = writeln!(
            text,
            "# {} of {} checks agree to {}; worst: {} {} at kappa_t={} (error {})",
            report.checks.len() - failed,
            report.checks.len(),
            fmt12(verify::AGREEMENT_TOL),
            w.case,
            w.quadrature,
            fmt12(w.kappa_t),
            fmt12(w.abs_error())
        );
    }
    Ok(Outcome { text, code: if passed { 0 } else { 1 }, plot: None })
}

fn dispatch(cli: &Cli) -> concur_core::Result<Outcome> {
    let load = |p: &Path| ScenarioConfig::from_path(p);
    match &cli.command {
        Command::Evolve { config } => scenario::run_evolve(&load(config)?),
        Command::Eigenmodes { config } => scenario::run_eigenmodes(&load(config)?),
        Command::Check { config } => scenario::run_check(&load(config)?),
        Command::Qpm { dataset, command } => {
            let set = qpm_cmd::load_dataset(dataset.as_deref())?;
            qpm_cmd::run(command, &set)
        }
        Command::Verify { quick } => run_verify(*quick),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), String> {
    std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("concur: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let written = match &cli.out {
        Some(path) => write_file(path, &outcome.text),
        None => std::io::stdout().write_all(outcome.text.as_bytes()).map_err(|e| e.to_string()),
    };
    let plotted = match (&cli.plot_script, &outcome.plot) {
        (Some(path), Some(script)) => write_file(path, script),
        (Some(_), None) => Err("this command has no plot script".into()),
        _ => Ok(()),
    };
    for r in [written, plotted] {
        if let Err(msg) = r {
            eprintln!("concur: {msg}");
            return ExitCode::from(2);
        }
    }
    ExitCode::from(outcome.code)
}
