// Copyright 2026 The symdepol Authors
// SPDX-License-Identifier: Apache-2.0

//! Command-line front end.
//!
//! Exit codes: 0 pass, 1 a check failed, 2 bad input, 3 numerical failure.
//! Errors are written to stderr as one JSON object `{"error", "message"}`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde_json::json;

use crate::channel::{verify_channel_with, KrausChannel, LindbladGenerator, VERIFY_CP_TOL, VERIFY_TP_TOL};
use crate::dynamics::{fixed_points_with_tol, propagate, time_grid};
use crate::error::{Error, Result};
use crate::matkernel::{ComplexMatrix, NULLSPACE_TOL};
use crate::scenario::{run_and_write, ScenarioConfig, ScenarioName};
use crate::state::purity;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "symdepol", version, about = "Symmetry-adapted quantum channels and Lindblad dynamics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a named scenario; writes CSV and report, prints the report.
    Scenario(ScenarioArgs),
    /// Kraus-channel utilities.
    #[command(subcommand)]
    Channel(ChannelCommand),
    /// Propagate a state under a generator and print the trajectory CSV.
    Evolve(EvolveArgs),
    /// Print a basis of the generator's stationary operators.
    FixedPoints(FixedPointArgs),
    /// Print the default configuration of a scenario.
    ConfigTemplate {
        name: String,
    },
}

#[derive(Debug, Args)]
struct ScenarioArgs {
    name: String,
    #[arg(long)]
    config: PathBuf,
    /// Overrides the scenario's pass tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Directory that relative output paths resolve against.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Debug, Subcommand)]
enum ChannelCommand {
    /// Check trace preservation and complete positivity of a Kraus set.
    Verify {
        #[arg(long)]
        input: PathBuf,
        /// Overrides both the TP and the CP tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Debug, Args)]
struct EvolveArgs {
    #[arg(long)]
    generator: PathBuf,
    /// Density matrix as nested [re, im] rows.
    #[arg(long)]
    state: PathBuf,
    #[arg(long)]
    tmax: f64,
    #[arg(long)]
    samples: usize,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the full states as JSON.
    #[arg(long)]
    states_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FixedPointArgs {
    #[arg(long)]
    generator: PathBuf,
    /// Relative nullspace tolerance.
    #[arg(long)]
    tol: Option<f64>,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write_stdout(&e.to_string());
                return EXIT_PASS;
            }
            emit_error("usage", &e.to_string());
            return EXIT_INPUT;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            emit_error(e.kind(), &e.to_string());
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_numerical() {
        EXIT_NUMERICAL
    } else {
        EXIT_INPUT
    }
}

fn emit_error(kind: &str, message: &str) {
    let doc = json!({ "error": kind, "message": message.trim_end() });
    eprintln!("{doc}");
}

fn execute(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Scenario(args) => scenario(args),
        Command::Channel(ChannelCommand::Verify { input, tol }) => {
            let ch: KrausChannel = read_json(&input)?;
            let tp = tol.unwrap_or(VERIFY_TP_TOL);
            let cp = tol.unwrap_or(VERIFY_CP_TOL);
            check_tol(tp)?;
            let report = verify_channel_with(&ch, tp, cp)?;
            print_json(&report)?;
            Ok(if report.pass { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Evolve(args) => evolve(args),
        Command::FixedPoints(args) => {
            let g: LindbladGenerator = read_json(&args.generator)?;
            let tol = args.tol.unwrap_or(NULLSPACE_TOL);
            check_tol(tol)?;
            let basis = fixed_points_with_tol(&g, tol)?;
            print_json(&json!({ "dimension": basis.len(), "basis": basis }))?;
            Ok(EXIT_PASS)
        }
        Command::ConfigTemplate { name } => {
            let name: ScenarioName = name.parse()?;
            let mut text = ScenarioConfig::template(name).to_json_pretty();
            text.push('\n');
            write_stdout(&text)?;
            Ok(EXIT_PASS)
        }
    }
}

fn scenario(args: ScenarioArgs) -> Result<i32> {
    let name: ScenarioName = args.name.parse()?;
    let mut cfg = ScenarioConfig::from_path(&args.config)?;
    if cfg.scenario != name {
        return Err(Error::Argument(format!(
            "config describes scenario {}, not {name}",
            cfg.scenario
        )));
    }
    if let Some(tol) = args.tol {
        check_tol(tol)?;
        cfg.tolerances.check = Some(tol);
    }
    let (outcome, files) = run_and_write(&cfg, &args.out_dir)?;
    log::info!("wrote {} and {}", files.csv.display(), files.report.display());
    write_stdout(&outcome.report.to_json_pretty())?;
    Ok(if outcome.report.pass { EXIT_PASS } else { EXIT_FAIL })
}

fn evolve(args: EvolveArgs) -> Result<i32> {
    let g: LindbladGenerator = read_json(&args.generator)?;
    let rho0: ComplexMatrix = read_json(&args.state)?;
    let times = time_grid(args.tmax, args.samples)?;
    let mut traj = propagate(&g, &rho0, &times)?;
    traj.record_populations("");
    traj.record("purity", purity);
    let csv = traj.to_csv();
    match &args.out {
        Some(path) => fs::write(path, csv)?,
        None => write_stdout(&csv)?,
    }
    if let Some(path) = &args.states_out {
        let mut s = serde_json::to_string(&traj.states_json())?;
        s.push('\n');
        fs::write(path, s)?;
    }
    Ok(EXIT_PASS)
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::Argument(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_stdout(&text)
}

/// A reader that closed the pipe early is not an error.
fn write_stdout(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}
