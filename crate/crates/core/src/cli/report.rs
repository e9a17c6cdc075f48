//! JSON and plain-text renderings of reports. Rationals are written as "p/q" strings
//! and every other number is an integer, so no floating point reaches the output.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::bounds::BoundReport;
use crate::exactalg::RatFunc;
use crate::places::{Divisor, Height, PlaceSet};
use crate::solver::{SolutionReport, VerifyOutcome, WindowScan};

pub fn divisor_json(d: &Divisor) -> Value {
    let finite: Vec<Value> =
        d.entries().iter().map(|(b, v)| json!({ "place": b.render(), "valuation": v })).collect();
    json!({ "finite": finite, "inf": d.at_infinity() })
}

pub fn divisor_text(d: &Divisor) -> String {
    let mut parts: Vec<String> = d.entries().iter().map(|(b, v)| format!("({b}): {v}")).collect();
    parts.push(format!("inf: {}", d.at_infinity()));
    parts.join(", ")
}

pub fn height_json(h: Height) -> Value {
    match h {
        Height::Finite(n) => json!(n),
        Height::Infinite => json!("inf"),
    }
}

fn places_json(s: &PlaceSet) -> Value {
    json!(s.render())
}

pub fn bound_json(b: &BoundReport) -> Value {
    let mut constants = serde_json::Map::new();
    for (k, c) in &b.constants {
        constants.insert(format!("C{k}"), json!(c.to_string()));
    }
    let h = &b.heights;
    let mut heights = json!({
        "coeff_ratio_max": h.coeff_ratio_max,
        "root_ratio_min": h.root_ratio_min,
    });
    for (key, val) in [("coeff_max", h.coeff_max), ("root_max", h.root_max), ("root_min", h.root_min)] {
        if let Some(v) = val {
            heights[key] = json!(v);
        }
    }
    let mut out = json!({
        "kind": b.kind.name(),
        "genus": b.genus,
        "enlarged_S": places_json(&b.enlarged_s),
        "S_count": b.s_count,
        "heights": heights,
        "constants": constants,
    });
    if !b.gaps.is_empty() {
        out["lattice_gaps"] =
            b.gaps.iter().map(|g| json!({ "i": g.i, "j": g.j, "gap": g.gap.to_string() })).collect();
    }
    if let Some(sh) = &b.shifted {
        out["shifted"] = json!({
            "S_prime": places_json(&sh.places),
            "place_count": sh.place_count,
            "shifts": sh.shifts.iter().map(|e| json!({
                "b": e.shift,
                "coeff_ratio_height": e.coeff_ratio_height,
                "bound": e.bound.to_string(),
            })).collect::<Vec<_>>(),
        });
    }
    out["final_bound"] = json!(b.final_bound);
    out
}

pub fn bound_text(b: &BoundReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "problem: {} (genus {})", b.kind.name(), b.genus);
    let _ = writeln!(s, "enlarged S: {} (|S| = {})", b.enlarged_s.render().join(", "), b.s_count);
    for (k, c) in &b.constants {
        let _ = writeln!(s, "C{k} = {c}");
    }
    for g in &b.gaps {
        let _ = writeln!(s, "lattice gap (root {}, root {}) = {}", g.i, g.j, g.gap);
    }
    if let Some(sh) = &b.shifted {
        let _ = writeln!(s, "S' place count: {} ({} shifts)", sh.place_count, sh.shifts.len());
    }
    let _ = writeln!(s, "final bound: {}", b.final_bound);
    s
}

fn window_json(w: &WindowScan) -> Value {
    json!({ "lo": w.lo, "hi": w.hi, "count_found": w.count_found(), "found": w.found })
}

fn indices_text(ix: &[u64]) -> String {
    match ix {
        [n] => format!("n = {n}"),
        [n, m] => format!("(n, m) = ({n}, {m})"),
        _ => format!("{ix:?}"),
    }
}

pub fn solution_json(input: Value, r: &SolutionReport) -> Value {
    let solutions: Vec<Value> = r
        .solutions
        .iter()
        .map(|s| {
            json!({
                "indices": s.indices,
                "value": s.value.render(),
                "divisor": divisor_json(&s.divisor),
                "in_user_S": s.in_user_s,
            })
        })
        .collect();
    let mut out = json!({
        "input": input,
        "mode": r.mode.name(),
        "bound": bound_json(&r.bound),
        "enumerated": r.enumerated,
        "solutions": solutions,
        "user_solutions": r.user_solutions,
    });
    if let Some(w) = &r.scan {
        out["window"] = window_json(w);
    }
    out
}

pub fn solution_text(r: &SolutionReport) -> String {
    let mut s = bound_text(&r.bound);
    let _ = writeln!(s, "values tested: {}", r.enumerated);
    let _ = writeln!(s, "solutions (enlarged S): {}", r.solutions.len());
    for sol in &r.solutions {
        let mark = if sol.in_user_s { "" } else { "  [not a unit for the given S]" };
        let _ = writeln!(s, "  {}: {}{}", indices_text(&sol.indices), sol.value, mark);
        let _ = writeln!(s, "    divisor: {}", divisor_text(&sol.divisor));
    }
    let _ = writeln!(s, "solutions (given S): {}", r.user_solutions.len());
    if let Some(w) = &r.scan {
        let _ = writeln!(s, "window [{}, {}]: {} found", w.lo, w.hi, w.count_found());
        for ix in &w.found {
            let _ = writeln!(s, "  {}", indices_text(ix));
        }
    }
    s
}

pub fn verify_json(input: Value, v: &VerifyOutcome) -> Value {
    json!({
        "input": input,
        "indices": v.indices,
        "value": v.value.render(),
        "places": places_json(&v.places),
        "is_s_unit": v.is_s_unit,
        "divisor": v.divisor.as_ref().map(divisor_json),
    })
}

pub fn verify_text(v: &VerifyOutcome) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "indices: {:?}", v.indices);
    let _ = writeln!(s, "value: {}", v.value);
    let _ = writeln!(s, "places: {}", v.places.render().join(", "));
    let _ = writeln!(s, "S-unit: {}", v.is_s_unit);
    if let Some(d) = &v.divisor {
        let _ = writeln!(s, "divisor: {}", divisor_text(d));
    }
    s
}

pub fn divisor_query_json(f: &RatFunc, d: &Divisor, basis: &PlaceSet) -> Value {
    json!({ "expr": f.render(), "divisor": divisor_json(d), "basis": places_json(basis) })
}
