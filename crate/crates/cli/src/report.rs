//! JSON and text rendering of command results.

use std::io::Write;
use std::sync::Arc;

use charp::decomp::{Decomposition, GrowthCertificate};
use charp::perfection::{VerifyFailure, VerifyOutcome};
use charp::{GroebnerBudget, Ideal, Polynomial, Ring};
use serde_json::{json, Value};

use crate::error::{CliError, EXIT_OK, EXIT_VERIFICATION};
use crate::Global;

pub const FORMAT_VERSION: u32 = 1;

/// Outcome of a command that ran to completion.
pub struct Report {
    pub result: Value,
    pub witnesses: Vec<Value>,
    pub text: Vec<String>,
    /// False when the command finished but what it checked does not hold.
    pub holds: bool,
}

impl Report {
    pub fn new(result: Value, text: Vec<String>) -> Self {
        Self {
            result,
            witnesses: Vec::new(),
            text,
            holds: true,
        }
    }
}

pub struct Envelope<'a> {
    pub command: &'a str,
    pub ring: Option<String>,
    pub budget: &'a GroebnerBudget,
    pub elapsed_ms: f64,
}

fn budget_json(b: &GroebnerBudget) -> Value {
    let u = b.usage();
    json!({
        "limits": {
            "max_pairs": b.max_pairs,
            "max_poly_terms": b.max_poly_terms,
            "max_degree": b.max_degree,
        },
        "usage": {
            "computations": u.computations,
            "pairs": u.pairs,
            "max_pairs_single": u.max_pairs_single,
            "max_terms": u.max_terms,
            "max_degree": u.max_degree,
        },
    })
}

fn envelope(env: &Envelope, global: &Global, status: &str, code: u8) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("format_version".into(), json!(FORMAT_VERSION));
    m.insert("command".into(), json!(env.command));
    m.insert("ring".into(), json!(env.ring));
    m.insert("status".into(), json!(status));
    m.insert("exit_code".into(), json!(code));
    m.insert("budget".into(), budget_json(env.budget));
    if !global.no_timing {
        m.insert("timing_ms".into(), json!((env.elapsed_ms * 1000.0).round() / 1000.0));
    }
    m
}

/// Writes one line to stdout; a closed pipe is not an error.
fn out(line: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{line}");
}

fn print_json(m: serde_json::Map<String, Value>) {
    out(&serde_json::to_string_pretty(&Value::Object(m)).expect("JSON values serialize"));
}

/// Prints a finished report and returns the exit code.
pub fn emit(report: Report, env: &Envelope, global: &Global) -> u8 {
    let (status, code) = if report.holds {
        ("ok", EXIT_OK)
    } else {
        ("verification_failed", EXIT_VERIFICATION)
    };
    if global.json {
        let mut m = envelope(env, global, status, code);
        m.insert("result".into(), report.result);
        m.insert("witnesses".into(), Value::Array(report.witnesses));
        print_json(m);
    } else {
        for line in &report.text {
            out(line);
        }
        if !global.no_timing {
            out(&format!("time: {:.1} ms", env.elapsed_ms));
        }
    }
    code
}

/// Prints an error and returns its exit code.
pub fn emit_error(err: &CliError, env: &Envelope, global: &Global) -> u8 {
    let code = err.exit_code();
    if global.json {
        let mut m = envelope(env, global, err.kind(), code);
        let (line, column) = match err {
            CliError::Input { line, column, .. } => (*line, *column),
            _ => (None, None),
        };
        let message = match err {
            CliError::Input { message, .. } => message.clone(),
            other => other.to_string(),
        };
        m.insert(
            "error".into(),
            json!({ "kind": err.kind(), "message": message, "line": line, "column": column }),
        );
        m.insert("result".into(), Value::Null);
        let witnesses: Vec<Value> = err.witness().map(|w| json!({ "poly": w.to_string() })).into_iter().collect();
        m.insert("witnesses".into(), Value::Array(witnesses));
        print_json(m);
    } else {
        eprintln!("error: {err}");
        if let Some(w) = err.witness() {
            eprintln!("witness: {w}");
        }
    }
    code
}

pub fn gens(i: &Ideal) -> Value {
    json!(i.gens().iter().map(Polynomial::to_string).collect::<Vec<_>>())
}

pub fn gens_text(i: &Ideal) -> String {
    let g: Vec<String> = i.gens().iter().map(Polynomial::to_string).collect();
    format!("({})", g.join(", "))
}

fn shift_json(ring: &Arc<Ring>, shift: &std::collections::BTreeMap<usize, u32>) -> Value {
    let vars = ring.base().vars();
    let m: serde_json::Map<String, Value> = shift.iter().map(|(&v, &l)| (vars[v].clone(), json!(l))).collect();
    Value::Object(m)
}

pub fn decomposition(d: &Decomposition, ring: &Arc<Ring>) -> Value {
    let comps: Vec<Value> = d
        .components
        .iter()
        .map(|c| {
            json!({
                "component_gens": gens(&c.ideal),
                "radical_gens": gens(&c.radical),
                "shift": shift_json(ring, c.shift()),
                "verified_primary": c.verified_primary,
            })
        })
        .collect();
    json!({ "components": comps, "minimal": d.minimal })
}

pub fn decomposition_text(d: &Decomposition, ring: &Arc<Ring>) -> Vec<String> {
    let mut out: Vec<String> = d
        .components
        .iter()
        .map(|c| format!("  {}  primary to {}", gens_text(&c.ideal), c.prime.display(ring)))
        .collect();
    out.push(format!("  minimal: {}", d.minimal));
    out
}

pub fn certificate(c: &GrowthCertificate) -> Value {
    let checks: Vec<Value> = c
        .per_n
        .iter()
        .flat_map(|step| {
            step.checks
                .iter()
                .enumerate()
                .map(move |(i, ok)| json!({ "n": step.n, "i": i, "ok": ok }))
        })
        .collect();
    json!({ "h": c.h, "depth": c.depth, "checks": checks })
}

pub fn verify(v: &VerifyOutcome) -> (Value, Vec<Value>) {
    match v {
        VerifyOutcome::Pass { depth } => (json!({ "passed": true, "depth": depth }), Vec::new()),
        VerifyOutcome::Failure {
            index,
            failure,
            witness,
        } => {
            let mut r = json!({ "passed": false, "index": index, "failure": failure_name(failure) });
            if let VerifyFailure::RootMismatch { root, expected } = failure {
                r["root_gens"] = gens(root);
                r["expected_gens"] = gens(expected);
            }
            let w = witness
                .iter()
                .map(|w| json!({ "index": index, "poly": w.to_string() }))
                .collect();
            (r, w)
        }
    }
}

pub fn failure_name(f: &VerifyFailure) -> &'static str {
    match f {
        VerifyFailure::RootMismatch { .. } => "root_mismatch",
        VerifyFailure::NotDescending => "not_descending",
        VerifyFailure::FrobeniusNotContained => "frobenius_not_contained",
    }
}

pub fn verify_text(v: &VerifyOutcome) -> String {
    match v {
        VerifyOutcome::Pass { depth } => format!("f-sequence law holds for n < {depth}"),
        VerifyOutcome::Failure {
            index,
            failure,
            witness,
        } => {
            let mut s = format!("f-sequence law fails at n = {index}: {}", failure_name(failure));
            if let Some(w) = witness {
                s.push_str(&format!(" (witness {w})"));
            }
            s
        }
    }
}
