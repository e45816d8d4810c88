use std::io::Write;
use std::process::{Command, Output, Stdio};

use fim_core::module::{preset, ModuleFile, PresetName};
use fim_core::{DegreeBox, FieldSpec};
use serde_json::Value;

fn fim(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_fim"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn fim");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn module_text(name: &str, upper: &[usize]) -> String {
    let p: PresetName = name.parse().unwrap();
    let v = preset(&p, FieldSpec::default(), &DegreeBox::new(upper.to_vec())).unwrap();
    serde_json::to_string(&ModuleFile::from_module(&v)).unwrap()
}

#[test]
fn dims_from_a_preset() {
    let out = fim(&["dims", "--preset", "paper-example-K", "--window", "2,2"], None);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["format"], 1);
    assert_eq!(v["window"], serde_json::json!([2, 2]));
    assert_eq!(v["p"], 32003);
}

#[test]
fn module_file_on_stdin_matches_preset() {
    let text = module_text("paper-example-V", &[4, 4]);
    let a = fim(&["cmreg", "--module", "-"], Some(&text));
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    let b = fim(&["cmreg", "--preset", "paper-example-V", "--window", "4,4"], None);
    let (mut a, mut b) = (json(&a), json(&b));
    a["module"] = Value::Null;
    b["module"] = Value::Null;
    assert_eq!(a, b);
}

#[test]
fn malformed_input_exits_with_one() {
    let out = fim(&["dims", "--module", "-"], Some("{ not json"));
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["error"].is_string());
    let out = fim(&["dims", "--preset", "nonsense(1)"], None);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn invalid_module_is_reported() {
    let text = module_text("paper-example-K", &[3, 3]);
    let mut file: Value = serde_json::from_str(&text).unwrap();
    let entry = file["inclusions"]["0,1"][0][0][0].as_i64().unwrap();
    file["inclusions"]["0,1"][0][0][0] = Value::from(-entry);
    let out = fim(&["validate", "--module", "-"], Some(&file.to_string()));
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["valid"], false);
    let violations = v["violations"].as_array().unwrap();
    assert!(violations.iter().any(|s| s.as_str().unwrap().contains("(0,1)")));
}

#[test]
fn exhausted_window_exits_with_two() {
    let out = fim(&["lc", "--preset", "paper-example-K", "--window", "2,2", "--i", "1"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(json(&out).get("largest_shift").is_some());
}

#[test]
fn theorem_a_rejects_irregular_r() {
    let out = fim(&["theorem-a", "--preset", "paper-example-V", "--window", "6,6", "--r", "0,0"], None);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn uniform_policy_is_recorded() {
    let out = fim(
        &["lc", "--preset", "paper-example-K", "--window", "5,5", "--i", "1", "--policy", "uniform", "--trace"],
        None,
    );
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["policy"]["shift_policy"], "uniform");
    assert_eq!(v["trace"]["steps"][0]["shift"], serde_json::json!([1, 1]));
}

#[test]
fn resolve_and_hd() {
    let out = fim(&["resolve", "--preset", "point(0)", "--window", "4", "--length", "2"], None);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["resolution"]["generator_degrees"], serde_json::json!([[[0]], [[1]], [[2]]]));
    let out = fim(&["hd", "--preset", "paper-example-V", "--window", "4,4", "--i", "1"], None);
    assert!(out.status.success());
}
