//! Deterministic JSON and CSV output.
//!
//! Objects are written with sorted keys, floats in `{:.16e}` (17 significant
//! digits) and non-finite floats as the strings `"nan"`, `"inf"`, `"-inf"`.

use std::fmt::Write as _;

use serde_json::{Map, Value};

use crate::complex::ComplexPoint;
use crate::disc::{Containment, IndexEstimate, RadiusProfile, SweepReport, Verdict, Witness};
use crate::geometry::{ContactOrder, Frame, LeviForm};
use crate::hoelder::{GainReport, GrowthEstimate, HoelderEstimate};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// One run's output.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    /// Which geometric property the run examines, e.g. "disc property of index k".
    pub property: String,
    pub config: Map<String, Value>,
    pub results: Value,
    pub diagnostics: Vec<String>,
    pub seed: u64,
}

impl Report {
    pub fn new(command: &str, property: &str, seed: u64) -> Self {
        Report {
            command: command.to_string(),
            property: property.to_string(),
            config: Map::new(),
            results: Value::Null,
            diagnostics: vec![],
            seed,
        }
    }

    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("schema_version".into(), Value::from(SCHEMA_VERSION));
        m.insert("tool".into(), Value::from("discgeom"));
        m.insert("tool_version".into(), Value::from(TOOL_VERSION));
        m.insert("command".into(), Value::from(self.command.clone()));
        m.insert("property".into(), Value::from(self.property.clone()));
        m.insert("config".into(), Value::Object(self.config.clone()));
        m.insert("results".into(), self.results.clone());
        m.insert("diagnostics".into(), Value::from(self.diagnostics.clone()));
        m.insert("seed".into(), Value::from(self.seed));
        Value::Object(m)
    }

    pub fn to_json(&self) -> String {
        to_json(&self.to_value())
    }
}

/// A float as a JSON value; non-finite values become strings.
pub fn num(x: f64) -> Value {
    if x.is_nan() {
        Value::from("nan")
    } else if x.is_infinite() {
        Value::from(if x > 0.0 { "inf" } else { "-inf" })
    } else {
        serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
    }
}

pub fn opt_num(x: Option<f64>) -> Value {
    x.map_or(Value::Null, num)
}

pub fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|x| num(*x)).collect())
}

/// `[[re, im], ...]`.
pub fn point(z: &ComplexPoint) -> Value {
    Value::Array(z.coords().iter().map(|c| Value::Array(vec![num(c.re), num(c.im)])).collect())
}

pub fn pairs(xs: &[(f64, f64)]) -> Value {
    Value::Array(xs.iter().map(|(a, b)| Value::Array(vec![num(*a), num(*b)])).collect())
}

fn obj(entries: Vec<(&str, Value)>) -> Value {
    Value::Object(entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

fn float_text(x: f64) -> String {
    format!("{x:.16e}")
}

fn escape(s: &str, out: &mut String) {
    out.push_str(&Value::from(s).to_string());
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize, out: &mut String| out.extend(std::iter::repeat("  ").take(d));
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_f64() {
                out.push_str(&float_text(n.as_f64().expect("f64")));
            } else {
                let _ = write!(out, "{n}");
            }
        }
        Value::String(s) => escape(s, out),
        Value::Array(a) => {
            if a.is_empty() {
                out.push_str("[]");
                return;
            }
            // short numeric arrays stay on one line
            if a.len() <= 4 && a.iter().all(|x| matches!(x, Value::Number(_) | Value::String(_) | Value::Null)) {
                out.push('[');
                for (i, x) in a.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    render(x, depth, out);
                }
                out.push(']');
                return;
            }
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                pad(depth + 1, out);
                render(x, depth + 1, out);
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
            pad(depth, out);
            out.push(']');
        }
        Value::Object(m) => {
            if m.is_empty() {
                out.push_str("{}");
                return;
            }
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (i, k) in keys.iter().enumerate() {
                pad(depth + 1, out);
                escape(k, out);
                out.push_str(": ");
                render(&m[*k], depth + 1, out);
                out.push_str(if i + 1 < keys.len() { ",\n" } else { "\n" });
            }
            pad(depth, out);
            out.push('}');
        }
    }
}

/// Pretty JSON with sorted keys and 17-digit floats, newline-terminated.
pub fn to_json(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out.push('\n');
    out
}

/// Comma-separated numeric table with a header line.
pub fn csv(header: &[&str], rows: &[Vec<f64>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|x| float_text(*x)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn frame_value(f: &Frame) -> Value {
    obj(vec![
        ("normal", point(&f.n)),
        ("j_normal", point(&f.jn)),
        ("complex_normal", point(&f.nu)),
        ("tangents", Value::Array(f.l.iter().map(point).collect())),
        ("grad_norm", num(f.grad_norm)),
    ])
}

pub fn levi_value(l: &LeviForm) -> Value {
    let n = l.matrix.nrows();
    let rows: Vec<Value> = (0..n)
        .map(|i| {
            Value::Array((0..n).map(|j| Value::Array(vec![num(l.matrix[(i, j)].re), num(l.matrix[(i, j)].im)])).collect())
        })
        .collect();
    obj(vec![
        ("matrix", Value::Array(rows)),
        ("eigenvalues", nums(&l.eigenvalues)),
        ("min_eigenvalue", num(l.min_eigenvalue)),
    ])
}

pub fn contact_value(c: &ContactOrder) -> Value {
    obj(vec![
        ("order", num(c.order)),
        ("r_squared", num(c.r_squared)),
        ("at_least_cap", Value::from(c.at_least_cap)),
        ("cap", num(c.cap)),
        ("samples", pairs(&c.samples)),
    ])
}

pub fn witness_value(w: &Witness) -> Value {
    obj(vec![
        ("point", point(&w.point)),
        ("w1", Value::Array(vec![num(w.w1.re), num(w.w1.im)])),
        ("w2", Value::Array(vec![num(w.w2.re), num(w.w2.im)])),
        ("r", num(w.r)),
    ])
}

pub fn containment_value(c: &Containment) -> Value {
    obj(vec![
        ("contained", Value::from(c.contained)),
        ("witness", witness_value(&c.witness)),
        ("evaluations", Value::from(c.evaluations as u64)),
    ])
}

pub fn profile_value(p: &RadiusProfile) -> Value {
    obj(vec![
        ("deltas", nums(&p.deltas)),
        ("rhos", Value::Array(p.rhos.iter().map(|r| opt_num(*r)).collect())),
        ("errors", Value::Array(p.errors.iter().map(|e| e.clone().map_or(Value::Null, Value::from)).collect())),
        ("c1", num(p.c1)),
    ])
}

pub fn verdict_text(v: &Verdict) -> &'static str {
    match v {
        Verdict::Finite(_) => "finite",
        Verdict::ExceedsCap => "exceeds_cap",
        Verdict::Inconclusive => "inconclusive",
    }
}

pub fn index_value(e: &IndexEstimate) -> Value {
    obj(vec![
        ("slope", num(e.slope)),
        ("k_hat", num(e.k_hat)),
        ("r_squared", num(e.r_squared)),
        ("verdict", Value::from(verdict_text(&e.verdict))),
        ("k_cap", Value::from(e.k_cap)),
    ])
}

pub fn sweep_value(s: &SweepReport) -> Value {
    let points: Vec<Value> = s
        .points
        .iter()
        .map(|p| {
            obj(vec![
                ("point", point(&p.point)),
                ("directions", Value::Array(p.directions.iter().map(point).collect())),
                (
                    "passes",
                    Value::Array(p.passes.iter().map(|row| Value::Array(row.iter().map(|b| Value::from(*b)).collect())).collect()),
                ),
                (
                    "failure",
                    p.failure.as_ref().map_or(Value::Null, |(i, d, w)| {
                        obj(vec![("direction", Value::from(*i as u64)), ("delta", num(*d)), ("witness", witness_value(w))])
                    }),
                ),
                ("error", p.error.clone().map_or(Value::Null, Value::from)),
                ("all_pass", Value::from(p.all_pass())),
            ])
        })
        .collect();
    obj(vec![
        ("points", Value::Array(points)),
        ("all_pass", Value::from(s.all_pass)),
        (
            "uniform",
            s.uniform.map_or(Value::Null, |u| obj(vec![("c1", num(u.c1)), ("c2", num(u.c2)), ("delta0", num(u.delta0))])),
        ),
    ])
}

pub fn hoelder_value(h: &HoelderEstimate) -> Value {
    obj(vec![
        ("exponent", num(h.exponent)),
        ("log_constant", num(h.log_constant)),
        ("r_squared", num(h.r_squared)),
        ("h_range", Value::Array(vec![num(h.h_range.0), num(h.h_range.1)])),
        ("flat", Value::from(h.flat)),
        ("samples", pairs(&h.samples)),
    ])
}

pub fn gain_value(g: &GainReport) -> Value {
    let per: Vec<Value> = g
        .per_delta
        .iter()
        .map(|d| {
            obj(vec![
                ("delta", num(d.delta)),
                ("h_cap", num(d.h_cap)),
                ("envelope", num(d.envelope)),
                ("pointwise", d.pointwise.as_ref().map_or(Value::Null, hoelder_value)),
                ("normal_difference", num(d.normal_difference)),
            ])
        })
        .collect();
    obj(vec![
        ("tangential", hoelder_value(&g.tangential)),
        ("normal", hoelder_value(&g.normal)),
        ("ratio", num(g.ratio)),
        ("per_delta", Value::Array(per)),
        ("direction", point(&g.direction)),
    ])
}

pub fn growth_value(g: &GrowthEstimate) -> Value {
    obj(vec![
        ("slope", num(g.slope)),
        ("log_constant", num(g.log_constant)),
        ("r_squared", num(g.r_squared)),
        ("vanishing", Value::from(g.vanishing)),
        ("samples", pairs(&g.samples)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_seventeen_digits_and_keys_sort() {
        let mut r = Report::new("demo", "none", 5);
        r.results = obj(vec![("b", num(0.1)), ("a", num(f64::NAN)), ("c", Value::from(3u64))]);
        let s = r.to_json();
        assert!(s.contains("\"b\": 1.0000000000000001e-1"));
        assert!(s.contains("\"a\": \"nan\""));
        assert!(s.contains("\"c\": 3"));
        assert!(s.find("\"a\"").unwrap() < s.find("\"b\"").unwrap());
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["results"]["b"].as_f64(), Some(0.1));
        assert_eq!(back["schema_version"].as_u64(), Some(SCHEMA_VERSION as u64));
    }

    #[test]
    fn csv_rows() {
        let s = csv(&["delta", "rho"], &[vec![1e-6, 0.5]]);
        assert_eq!(s, "delta,rho\n9.9999999999999995e-7,5.0000000000000000e-1\n");
    }
}
