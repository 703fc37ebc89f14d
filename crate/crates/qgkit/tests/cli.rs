use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.display().to_string()
}

fn qgkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgkit")).args(args).env_remove("QGKIT_ROOT_ORDER").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn omega_and_scan() {
    let out = qgkit(&["omega", "--n", "3", "--nu", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["result"]["dimension"], 2);

    let out = qgkit(&["scan-nu", "--n", "4", "--grid", "-1/3,0,1"]);
    let v = json(&out);
    let dims: Vec<u64> = v["result"]["scan"].as_array().unwrap().iter().map(|r| r["dimension"].as_u64().unwrap()).collect();
    assert_eq!(dims, [3, 0, 0]);
}

#[test]
fn relations_families() {
    let v = json(&qgkit(&["relations", "--n", "2", "--family", "E"]));
    assert_eq!(v["result"]["classes"][0]["relations"][0], "e*d - q^(1)*d*e");
    let v = json(&qgkit(&["relations", "--n", "2", "--family", "F"]));
    assert_eq!(v["result"]["classes"][0]["relations"][0], "g*f - q^(1)*f*g");
}

#[test]
fn checks_pass() {
    for args in [
        &["check", "ybe", "--nu", "-1/3"][..],
        &["check", "hecke", "--nu", "0"],
        &["check", "bialgebra", "--bound", "4"],
        &["check", "bialgebra", "--n", "3", "--bound", "4"],
        &["check", "dependency", "--n", "3", "--bound", "6"],
        &["check", "dj-image", "--n", "2", "--bound", "5"],
        &["oscillator", "comodule"],
        &["oscillator", "sl2", "--bound", "6"],
    ] {
        let out = qgkit(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
        assert_eq!(json(&out)["status"], "pass");
    }
}

#[test]
fn oscillator_constraints() {
    let v = json(&qgkit(&["oscillator", "constraints"]));
    assert_eq!(v["result"]["constraints"].as_array().unwrap().len(), 3);
    let v = json(&qgkit(&["oscillator", "probe", "--bound", "4"]));
    assert!(v["notes"].as_array().unwrap().iter().any(|n| n["name"] == "zp_equals_z_forced"));
}

#[test]
fn serre_output() {
    let v = json(&qgkit(&["serre", "--cartan", "2,-1;-3,2"]));
    assert_eq!(v["result"]["symmetrizer"], serde_json::json!([3, 1]));
    assert_eq!(v["result"]["relations"].as_array().unwrap().len(), 2);
}

#[test]
fn reduce_membership() {
    let out = qgkit(&["reduce", "--relations", &data("oscillator.rel"), "--generators", "B,A", "A*A*B", "A*B - q^2*B*A - 1"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["result"]["reduced"][0]["normal_form"], "q^(4)*B*A*A + (1 + q^(2))*A");
    // the oscillator rule is not degree-homogeneous: a residual is not a refutation
    assert_eq!(v["checks"][0]["status"], "undecided-at-bound");
    assert_eq!(v["checks"][1]["status"], "pass");

    let out = qgkit(&["reduce", "--relations", &data("plane.rel"), "--bound", "4", "x*y", "y*x*x - q*x*y*x"]);
    let v = json(&out);
    assert_eq!(v["checks"][0]["status"], "fail");
    assert_eq!(v["checks"][1]["status"], "pass");
    assert_eq!(v["status"], "fail");
}

#[test]
fn undecided_is_distinct() {
    let out = qgkit(&["reduce", "--relations", &data("plane.rel"), "--bound", "2", "x*x*y*y"]);
    let v = json(&out);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(v["checks"][0]["status"], "undecided-at-bound");
}

#[test]
fn input_errors_exit_2() {
    let out = qgkit(&["reduce", "--relations", &data("bad.rel"), "a"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.rel:2:15"), "{err}");

    let out = qgkit(&["reduce", "--relations", &data("oscillator.rel"), "A B"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1:3"));

    assert_eq!(qgkit(&["omega", "--n", "2"]).status.code(), Some(2));
    assert_eq!(qgkit(&["check"]).status.code(), Some(2));
    assert_eq!(qgkit(&["reduce", "--relations", "/nonexistent", "a"]).status.code(), Some(2));
    assert_eq!(qgkit(&["--config", "/nonexistent", "omega", "--n", "2", "--nu", "1"]).status.code(), Some(2));
}

#[test]
fn config_and_environment() {
    let out = qgkit(&["--config", &data("small.conf"), "scan-nu", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("command: scan-nu"));
    assert!(text.contains("grid = 0,1"));

    let out = Command::new(env!("CARGO_BIN_EXE_qgkit"))
        .args(["omega", "--n", "4", "--nu", "-1/3"])
        .env("QGKIT_ROOT_ORDER", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_qgkit"))
        .args(["omega", "--n", "4", "--nu", "-1/3"])
        .env("QGKIT_ROOT_ORDER", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["dimension"], 3);
}

#[test]
fn output_is_byte_identical() {
    let args = ["check", "dependency", "--n", "3", "--bound", "6"];
    let a = qgkit(&args);
    let b = qgkit(&args);
    assert_eq!(a.stdout, b.stdout);
    let a = qgkit(&["relations", "--n", "4", "--family", "E"]);
    let b = qgkit(&["relations", "--n", "4", "--family", "E"]);
    assert_eq!(a.stdout, b.stdout);
}
