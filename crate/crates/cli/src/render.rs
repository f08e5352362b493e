//! Text and JSON renderings of engine results.

use std::fmt::Write as _;

use mixed_turan::numeric::fmt_rat;
use mixed_turan::simplex::SimplexPoint;
use mixed_turan::{AlgebraicNumber, MixedAdjacencyMatrix, ThetaResult};
use num_rational::BigRational;
use serde_json::{json, Value};

pub fn rational(q: &BigRational) -> Value {
    Value::String(fmt_rat(q))
}

pub fn matrix(m: &MixedAdjacencyMatrix) -> Value {
    json!({ "size": m.size(), "u": m.u_rows(), "d": m.d_rows() })
}

pub fn value_float(v: &AlgebraicNumber) -> Value {
    json!(v.to_f64())
}

/// Exact coordinates where possible; irrational ones as `num(ρ)/den(ρ)`.
pub fn point(p: &SimplexPoint) -> Value {
    let float: Vec<f64> = p.to_f64();
    let exact: Vec<String> = match p {
        SimplexPoint::Rational(v) => v.iter().map(fmt_rat).collect(),
        SimplexPoint::Algebraic { num, den, .. } => num
            .iter()
            .map(|n| if n.is_zero() { "0".to_string() } else { format!("({n}) / ({den})") })
            .collect(),
    };
    json!({ "exact": exact, "float": float })
}

pub fn theta_json(r: &ThetaResult, timings: Value) -> Value {
    json!({
        "kind": r.kind.to_string(),
        "value": r.value.as_ref().map(|v| v.to_string()),
        "value_float": r.value.as_ref().map(value_float),
        "certificate": r.certificate.as_ref().map(|c| c.to_string()),
        "witness": r.witness.as_ref().map(matrix),
        "argmin": r.argmin.as_ref().map(point),
        "bounds": r.bounds.as_ref().map(|(lo, hi)| json!({ "lower": rational(lo), "upper": rational(hi) })),
        "timings": timings,
    })
}

pub fn theta_text(r: &ThetaResult) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "kind: {}", r.kind);
    let _ = writeln!(s, "route: {}", r.classification.tag);
    match &r.value {
        Some(v) => {
            let _ = writeln!(s, "value: {v}");
            if !v.is_rational() {
                let _ = writeln!(s, "value (float, advisory): {:.15}", v.to_f64());
            }
        }
        None => {
            let _ = writeln!(s, "value: infinity");
        }
    }
    if let Some(c) = &r.certificate {
        let _ = writeln!(s, "certificate: {c}");
    }
    if let Some((lo, hi)) = &r.bounds {
        let _ = writeln!(s, "bounds: [{}, {}]", fmt_rat(lo), fmt_rat(hi));
    }
    if r.candidates > 0 {
        let _ = writeln!(s, "candidates: {}", r.candidates);
    }
    if let Some(p) = &r.argmin {
        let _ = writeln!(s, "argmin: {p}");
    }
    if let Some(w) = &r.witness {
        let _ = writeln!(s, "witness:");
        s.push_str(&w.to_string());
    }
    s
}
