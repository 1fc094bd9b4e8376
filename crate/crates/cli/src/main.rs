//! `qpoisson` — generation, evolution, classification, tracing, and
//! verification of su(N) Lie-Poisson state geometry, with JSON/CSV I/O.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input.

mod jsonfmt;

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use qpoisson::basis::{compute_structure_tensors, generate_basis};
use qpoisson::bipartite::{partial_trace, Side};
use qpoisson::casimir::casimir_report;
use qpoisson::dynamics::{evolve_rk4, exact_trajectory, trajectory_to_csv};
use qpoisson::orbit::{classify, DEGENERACY_TOL};
use qpoisson::suite::{run_suite, SuiteConfig};
use qpoisson::{BipartiteState, GellMannState, HamiltonianCoeffs};

const TENSOR_ZERO_THRESHOLD: f64 = 1e-12;
const RANK_TOL: f64 = 1e-9;

#[derive(Parser)]
#[command(name = "qpoisson", version, about = "su(N) Lie-Poisson state geometry")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Rk4,
    Exact,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the generalized Gell-Mann basis for dimension N as JSON.
    Basis {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the structure tensors f and d for dimension N as JSON.
    Tensors {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integrate a state under a Hamiltonian; writes a CSV trajectory.
    Evolve {
        /// JSON file with the initial state.
        #[arg(long)]
        state: PathBuf,
        /// JSON file with the Hamiltonian coefficients.
        #[arg(long)]
        ham: PathBuf,
        /// Total evolution time.
        #[arg(long)]
        t: f64,
        /// Step size (also the sampling interval for --method exact).
        #[arg(long)]
        dt: f64,
        #[arg(long, value_enum, default_value = "rk4")]
        method: Method,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report Casimir invariants of a state.
    Casimirs {
        #[arg(long)]
        state: PathBuf,
    },
    /// Classify the coadjoint orbit of a state.
    Classify {
        #[arg(long)]
        state: PathBuf,
        /// Eigenvalue clustering tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Trace out one side of a bipartite pure state.
    TraceOut {
        #[arg(long)]
        bipartite: PathBuf,
        #[arg(long, value_enum)]
        side: SideArg,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Write the JSON report here instead of standard output.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

enum CliError {
    /// Exit code 2: bad arguments or malformed input.
    Input(String),
    /// Exit code 1: a verification check failed.
    Verification(String),
}

impl From<qpoisson::CoreError> for CliError {
    fn from(e: qpoisson::CoreError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf, what: &str) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {what} file {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("malformed {what} JSON in {}: {e}", path.display())))
}

fn emit(value: &serde_json::Value, out: Option<&PathBuf>) -> Result<(), CliError> {
    let text = jsonfmt::to_string_pretty(value);
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn to_value<T: serde::Serialize>(v: &T) -> Result<serde_json::Value, CliError> {
    serde_json::to_value(v).map_err(|e| CliError::Input(e.to_string()))
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Basis { n, out } => {
            let basis = generate_basis(n)?;
            emit(&to_value(&basis)?, out.as_ref())
        }
        Command::Tensors { n, out } => {
            let basis = generate_basis(n)?;
            let tensors = compute_structure_tensors(&basis, TENSOR_ZERO_THRESHOLD)?;
            emit(&to_value(&tensors)?, out.as_ref())
        }
        Command::Evolve {
            state,
            ham,
            t,
            dt,
            method,
            out,
        } => {
            if !(dt > 0.0 && dt.is_finite()) {
                return Err(CliError::Input("dt must be positive and finite".into()));
            }
            if !(t >= 0.0 && t.is_finite()) {
                return Err(CliError::Input("t must be non-negative and finite".into()));
            }
            let state: GellMannState = read_json(&state, "state")?;
            let coeffs: HamiltonianCoeffs = read_json(&ham, "hamiltonian")?;
            let basis = generate_basis(state.n)?;
            let tensors = compute_structure_tensors(&basis, TENSOR_ZERO_THRESHOLD)?;
            let traj = match method {
                Method::Rk4 => evolve_rk4(&state, &coeffs, &tensors, &basis, t, dt)?,
                Method::Exact => {
                    let steps = ((t / dt).round() as usize).max(1);
                    exact_trajectory(&state, &coeffs, &tensors, &basis, t, steps)?
                }
            };
            let csv = trajectory_to_csv(&traj)?;
            match out {
                Some(path) => fs::write(path, csv)?,
                None => print!("{csv}"),
            }
            Ok(())
        }
        Command::Casimirs { state } => {
            let state: GellMannState = read_json(&state, "state")?;
            let basis = generate_basis(state.n)?;
            let tensors = compute_structure_tensors(&basis, TENSOR_ZERO_THRESHOLD)?;
            let rep = casimir_report(&state, &basis, &tensors)?;
            let mut obj = serde_json::Map::new();
            obj.insert("n".into(), json!(rep.n));
            for (i, m) in (2..=rep.n).enumerate() {
                obj.insert(format!("tr{m}"), json!(rep.moments[i]));
            }
            for (i, v) in rep.char_coeffs.iter().enumerate() {
                obj.insert(format!("S{}", i + 1), json!(v));
            }
            for (i, m) in (2..=rep.n).enumerate() {
                obj.insert(format!("C{m}"), json!(rep.sudbery[i]));
            }
            obj.insert("entropy".into(), json!(rep.entropy));
            obj.insert("psd".into(), json!(rep.psd));
            obj.insert("psd_margin".into(), json!(rep.psd_margin));
            emit(&serde_json::Value::Object(obj), None)
        }
        Command::Classify { state, tol } => {
            let state: GellMannState = read_json(&state, "state")?;
            let basis = generate_basis(state.n)?;
            let tensors = compute_structure_tensors(&basis, TENSOR_ZERO_THRESHOLD)?;
            let cls = classify(
                &state,
                &basis,
                &tensors,
                tol.unwrap_or(DEGENERACY_TOL),
                RANK_TOL,
            )?;
            emit(&to_value(&cls)?, None)
        }
        Command::TraceOut { bipartite, side } => {
            let bstate: BipartiteState = read_json(&bipartite, "bipartite state")?;
            let side = match side {
                SideArg::A => Side::A,
                SideArg::B => Side::B,
            };
            let kept = match side {
                Side::A => bstate.n,
                Side::B => bstate.m,
            };
            let basis = generate_basis(kept)?;
            let reduced = partial_trace(&bstate, side, &basis)?;
            emit(&to_value(&reduced)?, None)
        }
        Command::Verify {
            suite,
            n_max,
            trials,
            seed,
            report,
        } => {
            let defaults = SuiteConfig::default();
            let cfg = SuiteConfig {
                n_max: n_max.unwrap_or(defaults.n_max),
                trials: trials.unwrap_or(defaults.trials),
                seed: seed.unwrap_or(defaults.seed),
                tolerances: BTreeMap::new(),
            }
            .validated()?;
            let reports = run_suite(&suite, &cfg)?;
            let passed = reports.iter().all(|r| r.passed);
            let value = json!({
                "suite": suite,
                "config": to_value(&cfg)?,
                "passed": passed,
                "reports": to_value(&reports)?,
            });
            emit(&value, report.as_ref())?;
            if passed {
                Ok(())
            } else {
                let failing: Vec<&str> = reports
                    .iter()
                    .filter(|r| !r.passed)
                    .map(|r| r.name.as_str())
                    .collect();
                Err(CliError::Verification(failing.join(", ")))
            }
        }
    }
}
