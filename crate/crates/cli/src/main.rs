//! Batch CLI for pre/post-selection scenarios.
//!
//! Exit codes: 0 success, 2 input error, 3 undefined conditional (zero ABL
//! denominator), 4 closest world nonexistent, 5 statistical test failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use ablworlds_core::abl::DEFAULT_REALITY_TOL;
use ablworlds_core::error::{Error, Result};
use ablworlds_core::report::{
    abl_report, lottery_report, reality_report, render_json, simulate_report, worlds_report,
    SimilarityKind,
};
use ablworlds_core::scenario::{parse_scenario, Scenario};

#[derive(Parser)]
#[command(
    name = "ablworlds",
    version,
    about = "Conditional outcome statistics for pre- and post-selected systems, \
             with Monte Carlo verification and possible-worlds analysis of their \
             counterfactual readings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Conditional (ABL) outcome distribution for one observable.
    Abl {
        /// Scenario file (.scn).
        file: PathBuf,
        #[arg(long)]
        observable: String,
        /// Emit the structured report instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Monte Carlo ensemble run with statistical checks against the
    /// analytic values.
    Simulate {
        file: PathBuf,
        /// Intermediate observable to measure on every run.
        #[arg(long, required_unless_present = "no_intermediate")]
        observable: Option<String>,
        /// Skip the intermediate measurement (post-selection only).
        #[arg(long, conflicts_with = "observable")]
        no_intermediate: bool,
        /// Number of runs (defaults to the scenario's ensemble block).
        #[arg(long)]
        runs: Option<u64>,
        /// Master seed (defaults to the scenario's ensemble block).
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads for the trial chunks (0 or absent = rayon default).
        /// Results are bit-identical for any setting.
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Probability-1 outcomes with their counterfactual-validity annotations.
    Reality {
        file: PathBuf,
        /// Tolerance for "probability 1" (in (0, 1e-6]).
        #[arg(long, default_value_t = DEFAULT_REALITY_TOL)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// World table, similarity spheres, cotenability, counterfactual verdict,
    /// and the likelihood audit.
    Worlds {
        file: PathBuf,
        /// Required for quantum scenarios; must be absent for classical ones.
        #[arg(long)]
        observable: Option<String>,
        /// Similarity relation: natural, z, or likelihood.
        #[arg(long)]
        sr: String,
        #[arg(long)]
        json: bool,
    },
    /// Built-in classical preset: "if I were to enter the lottery, I would
    /// win", under the sole-entrant stipulation and the likelihood relation.
    Lottery {
        /// Field size under factual conditions (total entrants, ≥ 2).
        #[arg(long)]
        entrants: u64,
        #[arg(long)]
        json: bool,
    },
}

fn load_scenario(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;
    parse_scenario(&text)
}

fn quantum_only(scenario: Scenario) -> Result<ablworlds_core::scenario::QuantumScenario> {
    match scenario {
        Scenario::Quantum(q) => Ok(q),
        Scenario::Classical(c) => Err(Error::validation(
            "scenario",
            format!("`{}` is classical; this subcommand needs a quantum scenario", c.name),
        )),
    }
}

fn emit<T: Serialize>(report: &T, json: bool, table: impl Fn(&T) -> String) {
    if json {
        print!("{}", render_json(report));
    } else {
        print!("{}", table(report));
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Abl {
            file,
            observable,
            json,
        } => {
            let scenario = quantum_only(load_scenario(&file)?)?;
            let report = abl_report(&scenario, &observable)?;
            emit(&report, json, |r| r.table());
            Ok(ExitCode::SUCCESS)
        }
        Command::Simulate {
            file,
            observable,
            no_intermediate,
            runs,
            seed,
            threads,
            json,
        } => {
            let scenario = quantum_only(load_scenario(&file)?)?;
            let runs = runs.unwrap_or(scenario.ensemble.runs);
            let seed = seed.unwrap_or(scenario.ensemble.seed);
            let obs = if no_intermediate {
                None
            } else {
                observable.as_deref()
            };
            let report = match threads.filter(|&n| n > 0) {
                Some(n) => {
                    let pool = rayon::ThreadPoolBuilder::new()
                        .num_threads(n)
                        .build()
                        .map_err(|e| Error::validation("--threads", e.to_string()))?;
                    pool.install(|| simulate_report(&scenario, obs, runs, seed))?
                }
                None => simulate_report(&scenario, obs, runs, seed)?,
            };
            emit(&report, json, |r| r.table());
            if report.passed {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(5))
            }
        }
        Command::Reality { file, tol, json } => {
            let scenario = quantum_only(load_scenario(&file)?)?;
            let report = reality_report(&scenario, tol)?;
            emit(&report, json, |r| r.table());
            Ok(ExitCode::SUCCESS)
        }
        Command::Worlds {
            file,
            observable,
            sr,
            json,
        } => {
            let scenario = load_scenario(&file)?;
            let kind: SimilarityKind = sr.parse()?;
            let report = worlds_report(&scenario, observable.as_deref(), kind)?;
            emit(&report, json, |r| r.table());
            Ok(ExitCode::SUCCESS)
        }
        Command::Lottery { entrants, json } => {
            let report = lottery_report(entrants)?;
            emit(&report, json, |r| r.table());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::UndefinedConditional { .. } => 3,
        Error::ClosestWorldNonexistent(_) => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
