use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn accmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_accmod"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value, String) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = accmod(&all);
    let text = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&text).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v, text)
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("accmod-cli-tests");
    fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

const KRONECKER: &str = r#"{
  "field": {"p": 2},
  "vertices": ["a", "b"],
  "arrows": [{"id": "alpha", "from": "a", "to": "b"}, {"id": "beta", "from": "a", "to": "b"}],
  "path_order": "right_to_left_action"
}"#;

fn check_names(v: &Value) -> Vec<String> {
    v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn witness_found_for_kronecker() {
    let (code, v, _) = json(&["algebra", "witness", "--fixture", "kronecker"]);
    assert_eq!(code, 0);
    assert_eq!(v["certificates"]["witness"]["phi"]["alpha"], 1);
}

#[test]
fn three_subspace_has_no_witness() {
    let (code, v, _) = json(&["algebra", "witness", "--fixture", "three-subspace"]);
    assert_eq!(code, 1);
    assert_eq!(v["passed"], false);
}

#[test]
fn malformed_algebra_is_exit_2_with_position() {
    let p = scratch(
        "bad.json",
        "{\"field\": {\"p\": 2},\n \"vertices\": [\"a\",]\n}",
    );
    let out = accmod(&["algebra", "witness", "--algebra", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("bad.json") && err.contains("line 2"), "{err}");
}

#[test]
fn supplied_witness_is_validated() {
    let good = scratch(
        "w.json",
        r#"{"e": {"e_b": 1}, "f": {"e_a": 1}, "phi": {"alpha": 1}, "psi": {"beta": 1}}"#,
    );
    let bad = scratch(
        "w-bad.json",
        r#"{"e": {"e_b": 1}, "f": {"e_a": 1}, "phi": {"alpha": 1}, "psi": {"alpha": 1}}"#,
    );
    let (code, _, _) = json(&[
        "algebra",
        "witness",
        "--fixture",
        "kronecker",
        "--witness",
        good.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let (code, v, _) = json(&[
        "algebra",
        "witness",
        "--fixture",
        "kronecker",
        "--witness",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    let failing: Vec<&Value> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .collect();
    assert_eq!(failing.len(), 1);
    assert_eq!(failing[0]["name"], "witness: phi, psi independent");
}

#[test]
fn w3_is_accessible_with_seven_steps() {
    let (code, v, _) = json(&["check", "accessible", "--family", "W(3)", "--field", "2"]);
    assert_eq!(code, 0);
    let chain = v["certificates"]["chain"].as_array().unwrap();
    assert_eq!(chain.len(), 7);
    let lengths: Vec<u64> = chain
        .iter()
        .map(|s| s["length"].as_u64().unwrap())
        .collect();
    assert_eq!(lengths, vec![7, 6, 5, 4, 3, 2, 1]);
}

#[test]
fn m1_in_w2_over_gf3_is_not_uniform() {
    let (code, v, _) = json(&[
        "check",
        "uniform-inclusion",
        "--family",
        "W(2)",
        "--sub-family",
        "M(1)",
        "--field",
        "3",
    ]);
    assert_eq!(code, 1);
    assert_eq!(
        v["certificates"]["offender"]["dims"],
        serde_json::json!([2, 2])
    );
}

#[test]
fn chain_inclusions_and_projections_from_the_cli() {
    let (code, _, _) = json(&[
        "check",
        "uniform-inclusion",
        "--family",
        "R(2)",
        "--sub-family",
        "M(1)",
    ]);
    assert_eq!(code, 0);
    let (code, _, _) = json(&[
        "check",
        "couniform",
        "--family",
        "R(3)",
        "--sub-family",
        "X",
    ]);
    assert_eq!(code, 0);
    let (code, _, _) = json(&[
        "check",
        "couniform",
        "--family",
        "M(2)",
        "--sub-family",
        "Y",
    ]);
    assert_eq!(code, 0);
    let (code, _, _) = json(&["check", "uniform-module", "--family", "V"]);
    assert_eq!(code, 0);
}

#[test]
fn s_plus_s_fails_with_split() {
    let alg = scratch("k.json", KRONECKER);
    let m = scratch("ss.json", r#"{"algebra": "k.json", "dims": {"b": 2}}"#);
    let (code, v, _) = json(&["check", "indecomposable", "--module", m.to_str().unwrap()]);
    assert_eq!(code, 1);
    let split = &v["certificates"]["split"];
    assert_eq!(split["image_dims"], serde_json::json!([0, 1]));
    assert_eq!(split["kernel_dims"], serde_json::json!([0, 1]));
    assert!(alg.exists());
}

#[test]
fn module_file_with_sub_file() {
    scratch("k2.json", KRONECKER);
    let m = scratch(
        "v.json",
        r#"{"algebra": "k2.json", "dims": {"a": 2, "b": 1}, "actions": {"alpha": [[1, 0]], "beta": [[0, 1]]}}"#,
    );
    let s = scratch("soc.json", r#"{"generators": [[0, 0, 1]]}"#);
    let (code, _, _) = json(&[
        "check",
        "uniform-inclusion",
        "--module",
        m.to_str().unwrap(),
        "--sub",
        s.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let (code, _, _) = json(&["check", "accessible", "--module", m.to_str().unwrap()]);
    assert_eq!(code, 0);
}

#[test]
fn field_disagreement_is_an_error() {
    let m = scratch(
        "v3.json",
        &format!(r#"{{"algebra": {KRONECKER}, "dims": {{"b": 1}}}}"#),
    );
    let out = accmod(&[
        "check",
        "indecomposable",
        "--module",
        m.to_str().unwrap(),
        "--field",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn paper_verify_exit_codes() {
    let (code, v, _) = json(&[
        "paper",
        "verify",
        "--fixture",
        "kronecker",
        "--n",
        "4",
        "--field",
        "2",
    ]);
    assert_eq!(code, 0, "{v}");
    let names = check_names(&v);
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert!(names.iter().any(|n| n.starts_with("remark 3: ")));

    let (code, v, _) = json(&[
        "paper",
        "verify",
        "--fixture",
        "kronecker",
        "--n",
        "2",
        "--field",
        "3",
    ]);
    assert_eq!(code, 0, "{v}");
    assert!(check_names(&v)
        .iter()
        .any(|n| n == "final remark: M(1) in W(2) not uniform"));

    let out = accmod(&[
        "paper",
        "verify",
        "--fixture",
        "kronecker",
        "--field",
        "rational",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("finite field"));

    let (code, _, _) = json(&["paper", "verify", "--fixture", "local-b", "--n", "2"]);
    assert_eq!(code, 0);
}

#[test]
fn json_is_stable_and_round_trips() {
    let args = [
        "paper",
        "verify",
        "--fixture",
        "local-b",
        "--n",
        "2",
        "--seed",
        "0x2a",
    ];
    let (_, v, first) = json(&args);
    let (_, _, second) = json(&args);
    assert_eq!(first, second);
    assert_eq!(v["seed"], 42);
    let mut again = serde_json::to_string_pretty(&v).unwrap();
    again.push('\n');
    assert_eq!(again, first);
}

#[test]
fn sequential_flag_gives_the_same_report() {
    let (_, a, _) = json(&["paper", "verify", "--n", "2"]);
    let (_, mut b, _) = json(&["paper", "verify", "--n", "2", "--sequential"]);
    b["command"] = a["command"].clone();
    assert_eq!(a, b);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("accmod-cli-tests");
    fs::create_dir_all(&dir).unwrap();
    let p = dir.join("report.json");
    let out = accmod(&[
        "algebra",
        "witness",
        "--format",
        "json",
        "--out",
        p.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn text_output_has_timing_and_json_does_not() {
    let out = accmod(&["algebra", "witness"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().last().unwrap().ends_with('s'));
    let (_, _, j) = json(&["algebra", "witness"]);
    assert!(!j.contains("elapsed") && !j.contains("time"));
}
