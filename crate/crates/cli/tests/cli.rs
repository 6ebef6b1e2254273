use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn charp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charp"))
        .args(args)
        .output()
        .expect("charp runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--json", "--no-timing"]);
    let out = charp(&all);
    let v: Value = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn write_spec(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

const CUSP: &str = r#"
[ring]
p = 2
vars = ["U", "V"]
quotient = ["V^2 + U^3"]
reduced = true

[ideal.u]
gens = ["U"]
"#;

const MIXED: &str = r#"
[ring]
p = 3
vars = ["X", "Y"]

[ideal.a]
gens = ["X^2", "X*Y"]

[ideal.x]
gens = ["X"]

[fseq.fg]
kind = "fg-perfection"
ideal = "a"
k = 1

[fseq.bad]
kind = "table"
terms = ["a", "x"]
"#;

#[test]
fn exit_code_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let mixed = write_spec(dir.path(), "mixed.toml", MIXED);
    let cusp = write_spec(dir.path(), "cusp.toml", CUSP);
    let bad = write_spec(dir.path(), "bad.toml", "[ring]\np = 4\nvars = [\"X\"]\n");
    let m = mixed.to_str().unwrap();
    let c = cusp.to_str().unwrap();
    let cases: &[(&[&str], i32)] = &[
        (&["decompose", m, "--ideal", "a"], 0),
        (&["fseq", "verify", m, "--fseq", "fg", "--depth", "3"], 0),
        (&["fseq", "verify", m, "--fseq", "bad", "--depth", "1"], 1),
        (&["gb", bad.to_str().unwrap()], 2),
        (&["gb", m], 2),
        (&["decompose", c], 2),
        (&["gb", "/nonexistent/spec.toml"], 2),
        (&["frob", "closure", c, "--max-e", "1", "--confirm", "2"], 3),
        (&["frob", "power", m, "--ideal", "a", "--e", "2", "--budget-degree", "5"], 3),
        (&["frob", "power", m, "--ideal", "a", "--e", "2", "--budget-degree", "30"], 0),
        (&["frob", "root", m, "--ideal", "a", "--budget-pairs", "1"], 0),
        (&["fseq", "growth", m, "--fseq", "fg", "--find-h", "--depth", "2"], 0),
    ];
    for (args, code) in cases {
        let (got, v) = json(args);
        assert_eq!(got, *code, "{args:?}: {v}");
        assert_eq!(v["exit_code"], *code, "{args:?}");
    }
    // usage errors from the argument parser also exit 2
    assert_eq!(charp(&["fseq", "growth", m, "--depth", "2"]).status.code(), Some(2));
}

#[test]
fn resource_exhaustion_is_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        dir.path(),
        "s.toml",
        "[ring]\np = 2\nvars = [\"X\", \"Y\", \"Z\"]\n[ideal.a]\ngens = [\"X*Y - Z^2\", \"X^2 - Y*Z\", \"Y^2 - X*Z\"]\n",
    );
    let (code, v) = json(&["gb", spec.to_str().unwrap(), "--budget-pairs", "1"]);
    assert_eq!(code, 3, "{v}");
    assert_eq!(v["status"], "resource_exhausted");
}

#[test]
fn json_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mixed = write_spec(dir.path(), "mixed.toml", MIXED);
    let m = mixed.to_str().unwrap();
    for args in [
        vec!["fseq", "growth", m, "--fseq", "fg", "--h", "2", "--depth", "3"],
        vec!["ex8", "--p", "5", "--l", "4", "--t", "1,2,1", "--depth", "3"],
        vec!["lg2", m, "--ideal", "a", "--n", "2", "--mode", "fclosure"],
    ] {
        let mut all = args.clone();
        all.extend(["--json", "--no-timing"]);
        let a = charp(&all).stdout;
        let b = charp(&all).stdout;
        assert!(!a.is_empty());
        assert_eq!(a, b, "{args:?}");
        let v: Value = serde_json::from_slice(&a).unwrap();
        assert!(v.get("timing_ms").is_none());
    }
}

#[test]
fn unbounded_ass_sizes_grow() {
    let (code, v) = json(&["ex8", "--p", "5", "--l", "2", "--t", "1,1,1", "--depth", "3"]);
    assert_eq!(code, 0, "{v}");
    let sizes: Vec<u64> = v["result"]["steps"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["ass_size"].as_u64().unwrap())
        .collect();
    assert_eq!(sizes, [1, 2, 3, 4]);
    assert_eq!(v["result"]["verify"]["passed"], true);
    assert_eq!(v["result"]["no_primary_decomposition"], true);
    assert_eq!(v["result"]["certificate"]["h"], 1);
    assert!(v["result"]["certificate"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["ok"] == true));
    assert_eq!(v["ring"], "F_5[X,Y]");
}

#[test]
fn unbounded_ass_rejects_too_deep() {
    let (code, v) = json(&["ex8", "--p", "3", "--l", "2", "--t", "1,1,1", "--depth", "3"]);
    assert_eq!(code, 2, "{v}");
}

#[test]
fn cusp_closure() {
    let dir = tempfile::tempdir().unwrap();
    let cusp = write_spec(dir.path(), "cusp.toml", CUSP);
    let (code, v) = json(&["frob", "closure", cusp.to_str().unwrap()]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["closure"], serde_json::json!(["U", "V"]));
    assert_eq!(r["is_f_closed"], false);
    assert_eq!(r["certified"], false);
    assert_eq!(v["witnesses"][0]["element"], "V");
    assert_eq!(v["witnesses"][0]["exponent"], 1);
}

#[test]
fn input_errors_are_located() {
    let dir = tempfile::tempdir().unwrap();
    let unknown = write_spec(
        dir.path(),
        "u.toml",
        "[ring]\np = 2\nvars = [\"X\", \"Y\"]\n\n[ideal.a]\ngens = [\"X^2\", \"X*Z\"]\n",
    );
    let (code, v) = json(&["gb", unknown.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["line"], 6);
    assert_eq!(v["error"]["column"], 19);
    assert!(v["error"]["message"].as_str().unwrap().contains('Z'));

    let not_prime = write_spec(dir.path(), "p.toml", "[ring]\np = 4\nvars = [\"X\"]\n");
    let (code, v) = json(&["gb", not_prime.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["line"], 2);
    assert_eq!(v["error"]["column"], 5);

    let text = charp(&["gb", unknown.to_str().unwrap()]);
    let err = String::from_utf8_lossy(&text.stderr);
    assert!(err.contains("line 6, column 19"), "{err}");
}

#[test]
fn printed_bases_parse_back() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        dir.path(),
        "s.toml",
        "[ring]\np = 5\nvars = [\"X\", \"Y\", \"Z\"]\n[ideal.a]\ngens = [\"X^2*Y - 3*Z + 1\", \"Y^2 - X*Z\", \"2*X - Y^3\"]\n",
    );
    let (code, v) = json(&["gb", spec.to_str().unwrap()]);
    assert_eq!(code, 0);
    let basis: Vec<String> = v["result"]["basis"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g.as_str().unwrap().to_string())
        .collect();
    let quoted: Vec<String> = basis.iter().map(|g| format!("{g:?}")).collect();
    let again = write_spec(
        dir.path(),
        "t.toml",
        &format!("[ring]\np = 5\nvars = [\"X\", \"Y\", \"Z\"]\n[ideal.a]\ngens = [{}]\n", quoted.join(", ")),
    );
    let (code, w) = json(&["gb", again.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(w["result"]["basis"], v["result"]["basis"]);
}

#[test]
fn shifted_decomposition() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        dir.path(),
        "s.toml",
        "[ring]\np = 5\nvars = [\"X\", \"Y\"]\n[ideal.a]\ngens = [\"X^2\", \"X*Y - 2*X\"]\n",
    );
    let s = spec.to_str().unwrap();
    let (code, v) = json(&["decompose", s, "--shift", "Y=2"]);
    assert_eq!(code, 0, "{v}");
    let comps = v["result"]["components"].as_array().unwrap();
    assert_eq!(comps.len(), 2);
    assert_eq!(comps[1]["radical_gens"], serde_json::json!(["X", "Y - 2"]));
    assert_eq!(comps[1]["shift"]["Y"], 2);
    // without the shift the ideal is not monomial
    assert_eq!(json(&["decompose", s]).0, 2);
}

#[test]
fn perfection_commands() {
    let dir = tempfile::tempdir().unwrap();
    let mixed = write_spec(dir.path(), "mixed.toml", MIXED);
    let m = mixed.to_str().unwrap();
    let member = |elem: &str, root: &str| {
        let (code, v) = json(&["perfection", "member", m, "--ideal", "a", "--k", "1", "--elem", elem, "--root", root]);
        assert_eq!(code, 0, "{v}");
        v["result"]["member"].as_bool().unwrap()
    };
    assert!(!member("X", "1"));
    assert!(member("X^2", "1"));
    assert!(member("X", "0"));
    assert!(member("X^6", "2"));
    let (code, v) = json(&["perfection", "decompose", m, "--ideal", "a", "--k", "1", "--depth", "2"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["components"].as_array().unwrap().len(), 2);
}

#[test]
fn text_output_is_default() {
    let out = charp(&["ex8", "--p", "3", "--l", "2", "--t", "1,1", "--depth", "2", "--no-timing"]);
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("|Ass| = 3"), "{s}");
    assert!(!s.contains("time:"));
}

#[test]
fn unbounded_ass_at_p7() {
    let (code, v) = json(&["ex8", "--p", "7", "--l", "2", "--t", "1,1,1", "--depth", "3"]);
    assert_eq!(code, 0, "{v}");
    let sizes: Vec<u64> = v["result"]["steps"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["ass_size"].as_u64().unwrap())
        .collect();
    assert_eq!(sizes, [1, 2, 3, 4]);
}

#[test]
fn frobenius_powers_of_a_variable_verify() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        dir.path(),
        "s.toml",
        "[ring]\np = 2\nvars = [\"X\", \"Y\"]\n[ideal.x]\ngens = [\"X\"]\n[fseq.s]\nkind = \"frobenius-powers\"\nideal = \"x\"\n",
    );
    let (code, v) = json(&["fseq", "verify", spec.to_str().unwrap(), "--fseq", "s", "--depth", "3"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["terms"][3], serde_json::json!(["X^8"]));
}

#[test]
fn verification_failures_carry_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let mixed = write_spec(dir.path(), "mixed.toml", MIXED);
    let (code, v) = json(&["fseq", "verify", mixed.to_str().unwrap(), "--fseq", "bad", "--depth", "1"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "verification_failed");
    assert_eq!(v["result"]["index"], 0);
    assert!(!v["witnesses"].as_array().unwrap().is_empty(), "{v}");
}
