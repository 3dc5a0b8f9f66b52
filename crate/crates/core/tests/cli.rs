//! End-to-end runs of the `bezout` binary.

mod support;

use std::io::Write;
use std::process::{Command, Stdio};

use bezout::json::{tuple_from_json, CertificateJson, MatrixJson, PolyJson, TraceJson};
use serde_json::Value;
use support::{poly, tuple};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout)
            .unwrap_or_else(|e| panic!("bad stdout {:?}: {e}", self.stdout))
    }
}

fn bezout(args: &[&str], input: &str) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bezout"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn polys(v: &Value) -> bezout::PolyTuple {
    let entries: Vec<PolyJson> = serde_json::from_value(v.clone()).unwrap();
    tuple_from_json(&entries).unwrap()
}

#[test]
fn certify_reports_unit_ideals() {
    let yes = bezout(&["certify"], r#"{"f": ["z1*z2 - 1", "z1"]}"#);
    assert_eq!(yes.code, 0, "{}", yes.stderr);
    assert_eq!(yes.json(), serde_json::json!({"unit_ideal": true}));

    let constant = bezout(&["certify"], r#"["1"]"#);
    assert_eq!(constant.code, 0);

    let no = bezout(&["certify"], r#"{"f": ["z1 - 1", "z2 - 1"]}"#);
    assert_eq!(no.code, 3);
    assert_eq!(no.json(), serde_json::json!({"unit_ideal": false}));
}

#[test]
fn solve_emits_verified_certificates() {
    let run = bezout(&["solve"], r#"{"n": 2, "f": ["z1*z2 - 1", "z1"]}"#);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let cert: CertificateJson = serde_json::from_str(&run.stdout).unwrap();
    let cert = cert.to_certificate().unwrap();
    assert!(cert.verified);
    assert_eq!(cert.g, tuple(&["-1", "z2"], 2));

    let run = bezout(&["solve", "--order", "lex"], r#"["z", "1 - z"]"#);
    assert_eq!(run.code, 0);
    assert_eq!(polys(&run.json()["g"]), tuple(&["1", "1"], 1));

    let run = bezout(&["solve"], r#"["z1 - 1", "z2 - 1"]"#);
    assert_eq!(run.code, 3);
    assert_eq!(run.json(), serde_json::json!({"unit_ideal": false}));
}

#[test]
fn shift_and_diff_invert_each_other() {
    let shift = bezout(
        &["shift"],
        r#"{"a": ["z", "1 - z", "z^2"], "x": ["1", "1", "0"], "H": {"(1,2)": "z", "(2,3)": "1 + i*z"}}"#,
    );
    assert_eq!(shift.code, 0, "{}", shift.stderr);
    let out = shift.json();
    let one: PolyJson = serde_json::from_value(out["y_dot_a"].clone()).unwrap();
    assert!(one.to_poly().unwrap().is_one());
    let y = polys(&out["y"]);

    let y_text: Vec<String> = y.iter().map(|p| p.to_string()).collect();
    let diff_input =
        serde_json::json!({"n": 1, "x": ["1", "1", "0"], "y": y_text, "a": ["z", "1 - z", "z^2"]});
    let diff = bezout(&["diff"], &diff_input.to_string());
    assert_eq!(diff.code, 0, "{}", diff.stderr);
    let out = diff.json();
    assert_eq!(out["reconstructs"], Value::Bool(true));
    let h: MatrixJson = serde_json::from_value(out["H"].clone()).unwrap();
    assert_eq!(h.to_matrix().unwrap().size(), 3);
}

#[test]
fn shift_rejects_diagonal_entries() {
    let run = bezout(
        &["shift"],
        r#"{"a": ["z", "1 - z"], "x": ["1", "1"], "H": {"(1,1)": "z"}}"#,
    );
    assert_eq!(run.code, 1);
    assert!(run.stdout.is_empty());
}

#[test]
fn glue_with_zero_stages_returns_first_solution() {
    let run = bezout(
        &["glue"],
        r#"{"f": ["z", "1 - z"], "base": {"g": ["1", "1"]}, "perturbations": [{"(1,2)": "z"}], "stages": 0}"#,
    );
    assert_eq!(run.code, 0, "{}", run.stderr);
    let trace: TraceJson = serde_json::from_str(&run.stdout).unwrap();
    let trace = trace.to_trace().unwrap();
    assert_eq!(trace.stages.len(), 1);
    assert_eq!(trace.partial_sums[0], trace.a_final);
    assert_eq!(trace.a_final, tuple(&["1 - z + z^2", "1 + z^2"], 1));
}

#[test]
fn glue_then_verify_round_trip() {
    let config = r#"{"f": ["z", "1 - z"], "base": {"g": ["1", "1"]},
        "perturbations": [{"(1,2)": "z"}, {"(1,2)": "z^2"}, {"(1,2)": "z^3"}, {"(1,2)": "z^4"}, {"(1,2)": "z^5"}],
        "stages": 4}"#;
    let glued = bezout(&["glue", "--pretty"], config);
    assert_eq!(glued.code, 0, "{}", glued.stderr);
    let trace = glued.json();
    assert_eq!(trace["stages"].as_array().unwrap().len(), 5);
    for stage in trace["stages"].as_array().unwrap() {
        assert_eq!(stage["bound"], Value::String("0".into()));
    }

    let verified = bezout(&["verify"], &glued.stdout);
    assert_eq!(verified.code, 0, "{}", verified.stderr);
    assert_eq!(verified.json()["verified"], Value::Bool(true));
    assert_eq!(verified.json()["stages"], Value::from(4));

    let mut broken = trace.clone();
    broken["a_final"][1]["terms"][0]["re"] = Value::String("5".into());
    let rejected = bezout(&["verify"], &broken.to_string());
    assert_eq!(rejected.code, 2);
    assert_eq!(rejected.json()["verified"], Value::Bool(false));
    assert!(rejected.stderr.contains("verification failed"));
}

#[test]
fn glue_without_perturbations_has_zero_bounds() {
    let run = bezout(
        &["glue", "--modulus-bound", "sqrt"],
        r#"{"f": ["z1*z2 - 1", "z1"], "stages": 3, "radii": [1, "3/2", 2, 3]}"#,
    );
    assert_eq!(run.code, 0, "{}", run.stderr);
    let trace = run.json();
    assert_eq!(trace["modulus_bound"], Value::String("sqrt".into()));
    assert_eq!(trace["schedule"], serde_json::json!(["1", "3/2", "2", "3"]));
    for stage in trace["stages"].as_array().unwrap() {
        assert_eq!(stage["bound"], Value::String("0".into()));
    }
    let g = polys(&trace["partial_sums"][3]);
    assert_eq!(g, tuple(&["-1", "z2"], 2));
}

#[test]
fn glue_refuses_non_unit_generators() {
    let run = bezout(&["glue"], r#"{"f": ["z1", "z2"], "stages": 1}"#);
    assert_eq!(run.code, 3);
}

#[test]
fn glue_rejects_a_wrong_base() {
    let run = bezout(
        &["glue"],
        r#"{"f": ["z", "1 - z"], "base": {"g": ["1", "0"]}, "stages": 1}"#,
    );
    assert_eq!(run.code, 2);
}

#[test]
fn malformed_json_reports_position() {
    let run = bezout(&["certify"], "{\"f\": [\"z\",\n  \"1 - z\" oops]}");
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("input:2:"), "{}", run.stderr);
    assert!(run.stdout.is_empty());
}

#[test]
fn polynomial_syntax_errors_are_input_errors() {
    let run = bezout(&["solve"], r#"["z1 +* 2", "z2"]"#);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("column"), "{}", run.stderr);
}

#[test]
fn reads_and_writes_files() {
    let dir = std::env::temp_dir().join(format!("bezout-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("in.json");
    let output = dir.join("out.json");
    std::fs::write(&input, r#"["z", "1 - z"]"#).unwrap();
    let run = bezout(
        &[
            "solve",
            "--input",
            input.to_str().unwrap(),
            "--output",
            output.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(run.code, 0, "{}", run.stderr);
    let written: CertificateJson =
        serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert!(written.to_certificate().unwrap().verified);
    assert_eq!(written.f[0].to_poly().unwrap(), poly("z", 1));
    std::fs::remove_dir_all(dir).unwrap();
}
