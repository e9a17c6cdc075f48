//! Problem specifications: the JSON documents read by `bound`, `solve` and `verify`.

use serde::Deserialize;
use serde_json::{json, Value};

use super::CliError;
use crate::error::Error;
use crate::exactalg::{parse_expr, RatFunc};
use crate::places::PlaceSet;
use crate::recurrence::{check_decreasing, Recurrence};
use crate::solver::SolveMode;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    #[serde(default)]
    coefficients: Vec<String>,
    #[serde(default)]
    roots: Vec<String>,
    #[serde(default, rename = "S")]
    places: Vec<String>,
    mode: Option<String>,
    indices: Option<Vec<u64>>,
    window: Option<(u64, u64)>,
}

/// A validated problem: recurrence, user place set, mode and optional extras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    pub recurrence: Recurrence,
    pub places: PlaceSet,
    pub mode: SolveMode,
    /// Strictly decreasing; present exactly in verify mode.
    pub indices: Option<Vec<u64>>,
    /// Inclusive range of n for a window scan, lo ≤ hi.
    pub window: Option<(u64, u64)>,
}

fn parse_mode(text: &str) -> Result<SolveMode, CliError> {
    match text {
        "single" => Ok(SolveMode::Single),
        "pair" => Ok(SolveMode::Pair),
        "verify" => Ok(SolveMode::Verify),
        other => Err(CliError::Input(format!("unknown mode '{other}' (expected single, pair or verify)"))),
    }
}

fn parse_list(field: &'static str, texts: &[String]) -> Result<Vec<RatFunc>, CliError> {
    texts
        .iter()
        .map(|t| parse_expr(t).map_err(|e| CliError::Expression { field, text: t.clone(), error: e }))
        .collect()
}

/// Parses and validates a specification document.
pub fn parse_spec(text: &str) -> Result<ProblemSpec, CliError> {
    let raw: RawSpec = serde_json::from_str(text).map_err(|e| CliError::Json(e.to_string()))?;
    let mode = parse_mode(raw.mode.as_deref().unwrap_or("single"))?;
    let coeffs = parse_list("coefficients", &raw.coefficients)?;
    let roots = parse_list("roots", &raw.roots)?;
    for t in &raw.places {
        PlaceSet::parse(&[t]).map_err(|e| CliError::Expression { field: "S", text: t.clone(), error: e })?;
    }
    let places = PlaceSet::parse(&raw.places)?;
    // Per-list problems are reported before cross-list ones.
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if roots[i] == roots[j] {
                return Err(Error::RootsNotDistinct(i, j).into());
            }
        }
    }
    let recurrence = Recurrence::new(coeffs, roots)?;
    let indices = match (mode, raw.indices) {
        (SolveMode::Verify, None) => return Err(CliError::Input("verify mode requires 'indices'".into())),
        (_, Some(ix)) => {
            check_decreasing(&ix)?;
            Some(ix)
        }
        (_, None) => None,
    };
    if let Some((lo, hi)) = raw.window {
        if lo > hi {
            return Err(Error::EmptyWindow { lo, hi }.into());
        }
    }
    Ok(ProblemSpec { recurrence, places, mode, indices, window: raw.window })
}

/// Reads a specification from `path`, or from standard input for `None` and `-`.
pub fn load_spec(path: Option<&std::path::Path>, stdin: &mut dyn std::io::Read) -> Result<ProblemSpec, CliError> {
    let text = match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?
        }
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| CliError::Io(format!("stdin: {e}")))?;
            s
        }
    };
    parse_spec(&text)
}

/// Canonical JSON form; loading it yields an equal specification.
pub fn spec_json(spec: &ProblemSpec) -> Value {
    let r = &spec.recurrence;
    let mut v = json!({
        "coefficients": r.coeffs().iter().map(RatFunc::render).collect::<Vec<_>>(),
        "roots": r.roots().iter().map(RatFunc::render).collect::<Vec<_>>(),
        "S": spec.places.render(),
        "mode": spec.mode.name(),
    });
    if let Some(ix) = &spec.indices {
        v["indices"] = json!(ix);
    }
    if let Some((lo, hi)) = spec.window {
        v["window"] = json!([lo, hi]);
    }
    v
}

pub fn render_spec(spec: &ProblemSpec) -> String {
    serde_json::to_string_pretty(&spec_json(spec)).expect("JSON values serialize")
}
