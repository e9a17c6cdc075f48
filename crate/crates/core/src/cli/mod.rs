//! Command-line front end.
//!
//! Exit codes: 0 success, 1 internal error, 2 hypothesis violation, 3 parse or input
//! error, 64 usage error.

mod report;
mod spec;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

pub use report::{bound_json, divisor_json, solution_json, verify_json};
pub use spec::{load_spec, parse_spec, render_spec, spec_json, ProblemSpec};

use crate::bounds::{theorem1_bound, theorem2_bound, BoundParams, BoundReport};
use crate::error::Error;
use crate::exactalg::parse_expr;
use crate::places::{divisor, height, PlaceSet};
use crate::solver::{solve_pair, solve_single, verify_sum, window_scan, SolveMode, SolveOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_HYPOTHESIS: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("in {field} entry '{text}': {error}")]
    Expression { field: &'static str, text: String, error: Error },
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.hypothesis().is_some() => EXIT_HYPOTHESIS,
            CliError::Core(Error::Internal(_)) => EXIT_INTERNAL,
            _ => EXIT_INPUT,
        }
    }

    /// Machine-readable error object.
    pub fn to_json(&self) -> Value {
        let kind = match self.exit_code() {
            EXIT_HYPOTHESIS => "hypothesis_violation",
            EXIT_INTERNAL => "internal_error",
            _ => match self {
                CliError::Json(_) => "malformed_json",
                CliError::Io(_) => "io_error",
                CliError::Expression { .. } => "parse_error",
                CliError::Core(Error::Syntax { .. } | Error::BadExponent { .. }) => "parse_error",
                _ => "invalid_input",
            },
        };
        let mut obj = json!({ "kind": kind, "message": self.to_string() });
        let core = match self {
            CliError::Core(e) => Some(e),
            CliError::Expression { field, text, error } => {
                obj["field"] = json!(field);
                obj["expression"] = json!(text);
                Some(error)
            }
            _ => None,
        };
        if let Some(e) = core {
            if let Some(h) = e.hypothesis() {
                obj["hypothesis"] = json!(h.name());
            }
            if let Error::Syntax { position, .. } | Error::BadExponent { position } = e {
                obj["position"] = json!(position);
            }
        }
        json!({ "error": obj })
    }
}

#[derive(Parser, Debug)]
#[command(name = "recsunit", version, about = "S-unit terms and pair sums of linear recurrences over Q(x)")]
struct Args {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Maximum number of worker threads for enumeration.
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the bound constants only (no enumeration).
    Bound {
        /// Specification file; standard input when absent or "-".
        spec: Option<PathBuf>,
    },
    /// Compute the bound and enumerate all solutions below it.
    Solve {
        /// Specification file; standard input when absent or "-".
        spec: Option<PathBuf>,
    },
    /// Check whether a sum of terms is an S-unit.
    Verify {
        /// Specification file; standard input when absent or "-".
        spec: Option<PathBuf>,
        /// Strictly decreasing indices, overriding those in the spec.
        #[arg(long, value_delimiter = ',')]
        indices: Option<Vec<u64>>,
    },
    /// Height of a rational function.
    Height { expr: String },
    /// Divisor of a nonzero rational function.
    Divisor {
        expr: String,
        /// Extra places to refine the basis against.
        #[arg(long = "places", value_delimiter = ',')]
        places: Vec<String>,
    },
}

struct Output {
    json: Value,
    text: String,
}

fn bound_for(spec: &ProblemSpec, params: BoundParams) -> Result<BoundReport, CliError> {
    match spec.mode {
        SolveMode::Single => Ok(theorem1_bound(&spec.recurrence, &spec.places, params)?),
        SolveMode::Pair => Ok(theorem2_bound(&spec.recurrence, &spec.places, params)?),
        SolveMode::Verify => Err(CliError::Input("bounds exist for single and pair modes only".into())),
    }
}

fn run_verify(spec: &ProblemSpec, indices: &[u64]) -> Result<Output, CliError> {
    let outcome = verify_sum(&spec.recurrence, &spec.places, indices)?;
    Ok(Output { json: verify_json(spec_json(spec), &outcome), text: report::verify_text(&outcome) })
}

/// Full pipeline for a specification: verify in verify mode, otherwise bound, enumerate
/// and scan the requested window.
fn run_spec(spec: &ProblemSpec, options: &SolveOptions) -> Result<Output, CliError> {
    if spec.mode == SolveMode::Verify {
        return run_verify(spec, spec.indices.as_deref().unwrap_or_default());
    }
    let mut rep = match spec.mode {
        SolveMode::Single => solve_single(&spec.recurrence, &spec.places, options)?,
        _ => solve_pair(&spec.recurrence, &spec.places, options)?,
    };
    if let Some((lo, hi)) = spec.window {
        rep.scan = Some(window_scan(&spec.recurrence, &spec.places, spec.mode, lo, hi, options)?);
    }
    Ok(Output { json: solution_json(spec_json(spec), &rep), text: report::solution_text(&rep) })
}

fn dispatch(args: &Args, stdin: &mut dyn Read) -> Result<Output, CliError> {
    let options = SolveOptions {
        params: BoundParams::default(),
        threads: args.threads.map(|n| usize::try_from(n).unwrap_or(usize::MAX)),
    };
    match &args.command {
        Command::Bound { spec } => {
            let spec = load_spec(spec.as_deref(), stdin)?;
            let b = bound_for(&spec, options.params)?;
            Ok(Output { json: json!({ "input": spec_json(&spec), "bound": bound_json(&b) }), text: report::bound_text(&b) })
        }
        Command::Solve { spec } => run_spec(&load_spec(spec.as_deref(), stdin)?, &options),
        Command::Verify { spec, indices } => {
            let mut spec = load_spec(spec.as_deref(), stdin)?;
            if let Some(ix) = indices {
                spec.indices = Some(ix.clone());
            }
            let ix = spec.indices.clone().ok_or_else(|| CliError::Input("no indices given".into()))?;
            run_verify(&spec, &ix)
        }
        Command::Height { expr } => {
            let f = parse_expr(expr).map_err(|e| CliError::Expression { field: "expression", text: expr.clone(), error: e })?;
            let h = height(&f);
            Ok(Output { json: json!({ "expr": f.render(), "height": report::height_json(h) }), text: format!("{h}\n") })
        }
        Command::Divisor { expr, places } => {
            let f = parse_expr(expr).map_err(|e| CliError::Expression { field: "expression", text: expr.clone(), error: e })?;
            let context = PlaceSet::parse(places)?;
            let (d, basis) = divisor(&f, context.finite())?;
            Ok(Output { json: report::divisor_query_json(&f, &d, &basis), text: format!("{}\n", report::divisor_text(&d)) })
        }
    }
}

fn write_json(out: &mut dyn Write, v: &Value) {
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

/// Runs the command line with explicit streams and returns the exit code.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(&args, stdin) {
        Ok(o) => {
            if args.json {
                write_json(stdout, &o.json);
            } else {
                let _ = write!(stdout, "{}", o.text);
            }
            EXIT_OK
        }
        Err(e) => {
            if args.json {
                write_json(stdout, &e.to_json());
            }
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdin.lock(), &mut stdout.lock(), &mut stderr.lock())
}
