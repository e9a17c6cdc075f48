use std::process::Command;

use recsunit::cli::{self, parse_spec, render_spec};
use serde_json::Value;

const E1: &str = r#"{"coefficients":["x","-(x+1)"],"roots":["x+1","x"],"S":[],"mode":"single"}"#;
const E2: &str = r#"{"coefficients":["1","-1"],"roots":["x","x+1"],"S":[],"mode":"pair"}"#;

fn run(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut input = stdin.as_bytes();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("recsunit").chain(args.iter().copied());
    let code = cli::run(argv, &mut input, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

fn assert_no_floats(v: &Value) {
    match v {
        Value::Number(n) => assert!(n.is_u64() || n.is_i64(), "non-integer number {n}"),
        Value::Array(a) => a.iter().for_each(assert_no_floats),
        Value::Object(o) => o.values().for_each(assert_no_floats),
        _ => {}
    }
}

#[test]
fn height_and_divisor_queries() {
    assert_eq!(run(&["height", "(x^2+1)/x"], ""), (0, "2\n".into(), String::new()));
    let (code, out, _) = run(&["--json", "height", "0"], "");
    assert_eq!(code, 0);
    assert_eq!(json(&out)["height"], "inf");
    let (code, out, _) = run(&["--json", "divisor", "(x^2+1)/x"], "");
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["divisor"]["inf"], -1);
    assert_eq!(v["divisor"]["finite"][0]["place"], "x");
    assert_eq!(v["divisor"]["finite"][0]["valuation"], -1);
}

#[test]
fn single_report_for_e1() {
    let (code, out, _) = run(&["--json", "solve"], E1);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_no_floats(&v);
    assert_eq!(v["bound"]["constants"]["C1"], "3");
    assert_eq!(v["bound"]["constants"]["C2"], "4");
    assert_eq!(v["bound"]["constants"]["C3"], "4");
    assert_eq!(v["bound"]["final_bound"], 4);
    let idx: Vec<Value> = v["solutions"].as_array().unwrap().iter().map(|s| s["indices"].clone()).collect();
    assert_eq!(idx, vec![json("[0]"), json("[2]")]);
    assert_eq!(v["solutions"][1]["value"], "x^2 + x");
}

#[test]
fn verify_on_e2() {
    let (code, out, _) = run(&["--json", "verify", "--indices", "2,1"], E2);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["is_s_unit"], true);
    assert_eq!(v["value"], "-2*x - 2");
    let (_, out, _) = run(&["--json", "verify", "--indices", "3,2"], E2);
    assert_eq!(json(&out)["is_s_unit"], false);
    let (code, _, _) = run(&["verify", "--indices", "2,2"], E2);
    assert_eq!(code, cli::EXIT_INPUT);
}

#[test]
fn pair_bound_constants_for_e2() {
    let (code, out, _) = run(&["--json", "bound"], E2);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_no_floats(&v);
    let c = &v["bound"]["constants"];
    for (k, want) in [("C4", "18"), ("C5", "18"), ("C6", "18"), ("C7", "36"), ("C8", "36"), ("C9", "18"), ("C12", "18"), ("C13", "18")] {
        assert_eq!(c[k], want, "{k}");
    }
    assert!(v["bound"]["lattice_gaps"].as_array().unwrap().iter().all(|g| g["gap"] == "1"));
}

#[test]
fn error_exit_codes() {
    let degenerate = r#"{"coefficients":["1","1"],"roots":["x","2*x"],"S":[],"mode":"pair"}"#;
    let (code, out, _) = run(&["--json", "bound"], degenerate);
    assert_eq!(code, cli::EXIT_HYPOTHESIS);
    assert_eq!(json(&out)["error"]["hypothesis"], "nondegeneracy");
    let (code, out, _) = run(&["--json", "solve"], &degenerate.replace("pair", "single"));
    assert_eq!(code, cli::EXIT_HYPOTHESIS);
    assert_eq!(json(&out)["error"]["kind"], "hypothesis_violation");
    let constant_root = r#"{"coefficients":["1","1"],"roots":["3","x"],"mode":"pair"}"#;
    let (_, out, _) = run(&["--json", "bound"], constant_root);
    assert_eq!(json(&out)["error"]["hypothesis"], "roots_nonconstant");
    let dependent = r#"{"coefficients":["1","1"],"roots":["x^2","x^3"],"mode":"pair"}"#;
    let (_, out, _) = run(&["--json", "bound"], dependent);
    assert_eq!(json(&out)["error"]["hypothesis"], "mult_independence");

    let (code, out, _) = run(&["--json", "bound"], r#"{"coefficients":["1","x^"],"roots":["x","x+1"]}"#);
    assert_eq!(code, cli::EXIT_INPUT);
    assert_eq!(json(&out)["error"]["kind"], "parse_error");
    assert_eq!(json(&out)["error"]["position"], 2);
    assert_eq!(run(&["bound"], "not json").0, cli::EXIT_INPUT);
    assert_eq!(run(&["bound"], r#"{"coefficients":["1"],"roots":["x"]}"#).0, cli::EXIT_INPUT);
    assert_eq!(run(&["frobnicate"], "").0, cli::EXIT_USAGE);
    assert_eq!(run(&["--threads", "0", "bound"], E1).0, cli::EXIT_USAGE);
    assert_eq!(run(&["--help"], "").0, cli::EXIT_OK);
}

#[test]
fn rendered_spec_gives_identical_report() {
    let original = r#"{"coefficients":["x", "-(x+1)"],"roots":["(x^2+x)/x","x"],"S":["x^2-1","inf"],"mode":"single","window":[5,10]}"#;
    let canonical = render_spec(&parse_spec(original).unwrap());
    let a = run(&["--json", "solve"], original);
    let b = run(&["--json", "solve"], &canonical);
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
    let v = json(&a.1);
    assert_eq!(v["window"]["count_found"], 0);
    assert_eq!(v["input"]["S"], json(r#"["x^2 - 1", "inf"]"#));
}

#[test]
fn binary_reads_spec_file() {
    let path = std::env::temp_dir().join(format!("recsunit-e1-{}.json", std::process::id()));
    std::fs::write(&path, E1).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_recsunit"))
        .args(["--json", "--threads", "2", "solve"])
        .arg(&path)
        .output()
        .unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&String::from_utf8(out.stdout).unwrap())["bound"]["final_bound"], 4);
    let missing = Command::new(env!("CARGO_BIN_EXE_recsunit")).args(["bound", "/nonexistent/spec.json"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(3));
}
