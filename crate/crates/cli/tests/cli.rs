use std::path::Path;
use std::process::{Command, Output};

use rankmetric::build_tower;
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_rankmetric"));
    c.env_remove("RANKMETRIC_BUDGET");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

/// Run with `--json -` and parse the report.
fn report(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--json", "-"]);
    let out = run(&full);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn schema() -> jsonschema::JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let raw: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&raw).expect("schema compiles")
}

fn assert_valid(v: &Value) {
    let s = schema();
    if let Err(errors) = s.validate(v) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("report does not match schema: {msgs:#?}");
    };
}

#[test]
fn mrd_report() {
    let v = report(&["mrd", "--p", "3", "--n", "2", "--k", "2", "--s", "1", "--gamma", "auto"]);
    assert_eq!(v["outputs"]["d"], 3);
    assert_eq!(v["outputs"]["is_mrd"], true);
    assert_eq!(v["command"], "mrd");
    assert_valid(&v);
}

#[test]
fn right_nucleus_report() {
    let v = report(&["nucleus", "--family", "D", "--p", "3", "--n", "2", "--k", "2", "--s", "1", "--gamma", "auto", "--side", "right"]);
    assert_eq!(v["outputs"]["nucleus"]["dim_Fq"], 2);
    assert_eq!(v["outputs"]["size"], 9);
    assert_eq!(v["outputs"]["scalar_subfield_degree"], 2);
    assert_valid(&v);
}

#[test]
fn self_equivalence_and_known_automorphism() {
    let v = report(&["equiv", "--left", "D:2:1:w", "--right", "D:2:1:w", "--p", "3", "--n", "2"]);
    assert_eq!(v["outputs"]["certificate"]["verdict"], "equivalent");
    assert_eq!(v["outputs"]["criterion_agrees"], true);
    assert_valid(&v);

    let t = build_tower(3, 1, 2, None).unwrap();
    let c = |k: i64| t.power_of_omega(k).code();
    let phi1 = serde_json::json!([1, 0, c(36), 0]);
    let phi2 = serde_json::json!([0, c(54), 0, c(2)]);
    let autos = report(&["auto", "--code", "D:2:1:w", "--shape", "binomial"]);
    let maps = autos["outputs"]["maps"].as_array().unwrap();
    assert_eq!(maps.len(), 1024);
    assert!(maps.iter().any(|m| m["phi1"] == phi1 && m["phi2"] == phi2 && m["rho"] == 0));
    assert_valid(&autos);
}

#[test]
fn every_command_matches_schema() {
    let cases: &[&[&str]] = &[
        &["field", "--oracle"],
        &["construct", "--k", "2", "--oracle"],
        &["mindist", "--k", "2", "--oracle"],
        &["mindist", "--n", "3", "--k", "3", "--budget", "1000", "--samples", "50", "--seed", "9"],
        &["mrd", "--family", "H", "--k", "2", "--h", "1", "--eta", "w^3"],
        &["dual", "--k", "3", "--oracle"],
        &["adjoint", "--k", "2", "--oracle"],
        &["nucleus", "--family", "G", "--k", "2", "--side", "middle", "--oracle"],
        &["spreadset", "--oracle"],
        &["hk", "--oracle"],
        &["equiv", "--k", "2", "--gamma", "w", "--theta", "w^3", "--t", "3", "--oracle"],
        &["equiv", "--left", "G:2:1", "--right", "H:2:1:w:1", "--shape", "monomial"],
        &["auto", "--k", "2", "--shape", "monomial", "--oracle"],
        &["mrd", "--poly", "2,0,0,2,1", "--k", "1"],
    ];
    for args in cases {
        let v = report(args);
        assert_valid(&v);
    }
}

#[test]
fn reports_are_deterministic() {
    let args = ["equiv", "--left", "D:2:1:w", "--right", "H:2:1:w:2", "--shape", "monomial"];
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("duration_ms");
        serde_json::to_string(&v).unwrap()
    };
    let a = strip(report(&args));
    let b = strip(report(&args));
    let mut single = args.to_vec();
    single.extend(["--jobs", "1"]);
    let mut c = report(&single);
    c["argv"] = report(&args)["argv"].clone();
    assert_eq!(a, b);
    assert_eq!(a, strip(c));
}

#[test]
fn json_file_and_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = run(&["mrd", "--k", "1", "--json", path.to_str().unwrap()]);
    assert!(out.status.success());
    let table = String::from_utf8(out.stdout).unwrap();
    assert!(table.lines().any(|l| l.starts_with("d ") && l.trim_end().ends_with('4')));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["outputs"]["d"], 4);
}

#[test]
fn exit_codes() {
    // precondition violation
    assert_eq!(run(&["mrd", "--k", "2", "--gamma", "w^2"]).status.code(), Some(2));
    assert_eq!(run(&["mrd", "--k", "2", "--s", "2"]).status.code(), Some(2));
    // usage errors
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["mrd"]).status.code(), Some(2));
    assert_eq!(run(&["nucleus", "--k", "2", "--side", "left"]).status.code(), Some(2));
    assert_eq!(run(&["equiv", "--left", "D:2:1:w"]).status.code(), Some(2));
    assert_eq!(run(&["mrd", "--k", "2", "--gamma", "zz"]).status.code(), Some(2));
    // non-primitive defining polynomial
    assert_eq!(run(&["field", "--poly", "1,1,1,1,1"]).status.code(), Some(2));
}

#[test]
fn budget_environment() {
    let out = bin().env("RANKMETRIC_BUDGET", "100").args(["mrd", "--k", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    let out = bin()
        .env("RANKMETRIC_BUDGET", "100")
        .args(["mrd", "--k", "2", "--budget", "100000"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let out = bin().env("RANKMETRIC_BUDGET", "lots").args(["mrd", "--k", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn schema_rejects_malformed_reports() {
    let s = schema();
    let good = report(&["mrd", "--k", "1"]);
    assert!(s.is_valid(&good));
    let mut missing = good.clone();
    missing.as_object_mut().unwrap().remove("tower");
    assert!(!s.is_valid(&missing));
    let mut wrong = good.clone();
    wrong["command"] = "mrd".into();
    wrong["outputs"] = serde_json::json!({ "d": 4 });
    assert!(!s.is_valid(&wrong));
    let mut bad_version = good;
    bad_version["schema"] = "rankmetric-report/0".into();
    assert!(!s.is_valid(&bad_version));
}
