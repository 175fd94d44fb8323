//! Command-line front end: load matrices and profiles from JSON, run each
//! computation, and emit machine-readable results on standard output.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse failure, 3 domain
//! error (the message on standard error names the violated invariant).

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use thermofield::rigged::{classify, profile_seminorm, DecayProfile, Seminorm};
use thermofield::tfd::{
    gibbs, thermal_average_operator, thermal_average_tfd, thermal_vacuum, Observable,
};
use thermofield::verify::{run_verification, VerifyConfig};
use thermofield::{ComplexMatrix, HSOperator};

/// Route-equivalence deltas above this fail the `average --route both` check.
const ROUTE_TOL: f64 = 1e-10;

#[derive(Parser)]
#[command(name = "thermofield", version, about = "Thermal states, doubled-space purifications, superoperators, and a seeded verification suite")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArg {
    /// Path to the JSON input; standard input when omitted.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build the Gibbs state of a Hermitian matrix at inverse temperature beta.
    Gibbs {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        beta: f64,
    },
    /// Thermal average of an observable, by the operator route, the
    /// doubled-space route, or both (reporting their difference).
    Average {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        beta: f64,
        #[arg(long, value_enum, default_value_t = Route::Both)]
        route: Route,
    },
    /// Thermal vacuum (purification) of the Gibbs state.
    Vacuum {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        beta: f64,
    },
    /// Superoperator forms of an operator: left/right multiplication or the
    /// commutator.
    Super {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum)]
        kind: SuperKind,
    },
    /// Classify a decay profile and tabulate its low-order seminorms.
    Classify {
        #[command(flatten)]
        input: InputArg,
    },
    /// Run the seeded verification suites and emit the report.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Comma-separated factor dimensions.
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Negative control: flip the vectorization convention so the
        /// route-equivalence cases must fail.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Route {
    Operator,
    Tfd,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuperKind {
    Left,
    Right,
    Commutator,
}

enum CliError {
    /// Input could not be read or parsed (exit 2).
    Parse(String),
    /// A type invariant or operation precondition was violated (exit 3).
    Domain(String),
}

impl CliError {
    fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Parse(_) => ExitCode::from(2),
            CliError::Domain(_) => ExitCode::from(3),
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Domain(m) => m,
        }
    }
}

fn domain<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Domain(e.to_string())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}", err.message());
            err.exit_code()
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Gibbs { input, beta } => {
            let h: ComplexMatrix = read_json(&input)?;
            let state = gibbs(&h, beta).map_err(domain)?;
            emit(&state)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Average { input, beta, route } => {
            let pair: AverageInput = read_json(&input)?;
            let state = gibbs(&pair.hamiltonian, beta).map_err(domain)?;
            let observable = Observable::new(pair.observable).map_err(domain)?;
            let mut out = AverageOutput::default();
            if route != Route::Tfd {
                out.route_values.operator =
                    Some(thermal_average_operator(&observable, &state).map_err(domain)?);
            }
            if route != Route::Operator {
                let vacuum = thermal_vacuum(&state);
                out.route_values.tfd =
                    Some(thermal_average_tfd(&observable, &vacuum).map_err(domain)?);
            }
            out.value = out.route_values.operator.or(out.route_values.tfd).expect("some route ran");
            let mut failed = false;
            if let (Some(op), Some(tfd)) = (out.route_values.operator, out.route_values.tfd) {
                let delta = (op - tfd).abs();
                out.delta = Some(delta);
                failed = delta > ROUTE_TOL;
            }
            emit(&out)?;
            if failed {
                eprintln!("error: route values differ beyond {ROUTE_TOL:e}");
                Ok(ExitCode::from(1))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
        Command::Vacuum { input, beta } => {
            let h: ComplexMatrix = read_json(&input)?;
            let state = gibbs(&h, beta).map_err(domain)?;
            emit(thermal_vacuum(&state).state())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Super { input, kind } => {
            let op: HSOperator = read_json(&input)?;
            let result = match kind {
                SuperKind::Left => thermofield::liouville::left_mult_super(&op),
                SuperKind::Right => thermofield::liouville::right_mult_super(&op),
                SuperKind::Commutator => {
                    thermofield::liouville::commutator_super(&op).map_err(domain)?
                }
            };
            emit(&result)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { input } => {
            let profile: DecayProfile = read_json(&input)?;
            let seminorms = (0..=4u32)
                .map(|k| {
                    let (finite, value) = match profile_seminorm(&profile, k) {
                        Seminorm::Finite(v) => (true, Some(v)),
                        Seminorm::Divergent => (false, None),
                    };
                    SeminormRow { k, finite, value }
                })
                .collect();
            emit(&ClassifyOutput {
                class: format!("{:?}", classify(&profile)),
                seminorms,
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            seed,
            dims,
            trials,
            inject_fault,
        } => {
            if dims.is_empty() || dims.contains(&0) {
                return Err(CliError::Parse(
                    "dims must be a non-empty list of positive integers".into(),
                ));
            }
            let report = run_verification(&VerifyConfig {
                seed,
                dims,
                trials,
                inject_fault,
            });
            let overall = report.overall;
            emit(&report)?;
            if overall {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("error: verification failed");
                Ok(ExitCode::from(1))
            }
        }
    }
}

#[derive(serde::Deserialize)]
struct AverageInput {
    hamiltonian: ComplexMatrix,
    observable: ComplexMatrix,
}

#[derive(Serialize, Default)]
struct AverageOutput {
    value: f64,
    route_values: RouteValues,
    delta: Option<f64>,
}

#[derive(Serialize, Default)]
struct RouteValues {
    #[serde(skip_serializing_if = "Option::is_none")]
    operator: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tfd: Option<f64>,
}

#[derive(Serialize)]
struct ClassifyOutput {
    class: String,
    seminorms: Vec<SeminormRow>,
}

#[derive(Serialize)]
struct SeminormRow {
    k: u32,
    finite: bool,
    value: Option<f64>,
}

fn read_json<T: serde::de::DeserializeOwned>(input: &InputArg) -> Result<T, CliError> {
    let text = match &input.input {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Parse(format!("cannot read standard input: {e}")))?;
            buf
        }
    };
    serde_json::from_str(&text).map_err(|e| classify_serde_error(&e.to_string()))
}

/// Serde folds our invariant messages into its own errors; anything that
/// names a violated invariant is a domain failure, plain JSON trouble is a
/// parse failure.
fn classify_serde_error(message: &str) -> CliError {
    const DOMAIN_MARKERS: [&str; 10] = [
        "NonSquare",
        "NotHermitian",
        "NegativeEigenvalue",
        "NonFinite",
        "BadLength",
        "EmptyDimension",
        "NotPositive",
        "TraceNotOne",
        "InvalidProfile",
        "ProfileViolation",
    ];
    if DOMAIN_MARKERS.iter().any(|m| message.contains(m)) {
        CliError::Domain(message.to_string())
    } else {
        CliError::Parse(message.to_string())
    }
}

fn emit<T: Serialize>(value: &T) -> Result<(), CliError> {
    let json = serde_json::to_string(value)
        .map_err(|e| CliError::Domain(format!("cannot serialize output: {e}")))?;
    println!("{json}");
    Ok(())
}
