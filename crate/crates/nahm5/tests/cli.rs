use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_nahm5"));
    c.env_remove("NAHM5_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&o.stdout)))
}

fn tmp(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("nahm5-cli-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d.join(name)
}

fn assert_table(v: &Value, pass: bool) {
    assert_eq!(v["pass"], pass);
    for r in v["reports"].as_array().unwrap() {
        let status = r["status"].as_str().unwrap();
        assert!(["pass", "fail", "measured"].contains(&status));
        assert!(!r["anchor"].as_str().unwrap().is_empty());
        assert!(r["metadata"]["version"].is_string());
        if pass {
            assert_ne!(status, "fail", "{r}");
        }
    }
}

#[test]
fn identities_small_table() {
    let o = run(&["identities", "--max-m", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_table(&json_out(&o), true);
}

#[test]
fn twistor_and_bundle_checks_pass() {
    let o = run(&["twistor-check", "--samples", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    assert_table(&json_out(&o), true);
    let o = run(&["bundle-check", "--a", "1", "--b", "-0.5", "--c", "0.25", "--samples", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_table(&json_out(&o), true);
}

#[test]
fn charge_one_integration_has_zero_drift() {
    let o = run(&["nahm", "integrate", "--k", "1", "--z0", "0.5", "--z1", "1.5"]);
    assert_eq!(o.status.code(), Some(0));
    let mut rd = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(rd.headers().unwrap(), vec!["z", "drift"]);
    let rows: Vec<(f64, f64)> = rd.deserialize().map(|r| r.unwrap()).collect();
    assert!(rows.len() > 10);
    assert!(rows.iter().all(|(_, d)| *d == 0.0));
    assert_eq!(rows.first().unwrap().0, 0.5);
    assert!((rows.last().unwrap().0 - 1.5).abs() < 1e-12);
}

#[test]
fn integrate_writes_files_and_resumes() {
    let (csv_path, state) = (tmp("k2.csv"), tmp("k2.json"));
    let o = run(&[
        "nahm", "integrate", "--k", "2", "--z1", "1.0", "--csv", csv_path.to_str().unwrap(), "--state",
        state.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let last = json_out(&o);
    assert!((last["z"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(last["pencil"]["k"], 2);
    let drift: Vec<(f64, f64)> = csv::Reader::from_path(&csv_path).unwrap().deserialize().map(|r| r.unwrap()).collect();
    assert!(drift.iter().all(|(_, d)| *d < 1e-8));
    let o = run(&["nahm", "integrate", "--init", state.to_str().unwrap(), "--z1", "1.2", "--method", "rk45"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn residues_round_trip_through_certify() {
    let o = run(&["nahm", "residues", "--k", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["certificate"]["pass"], true);
    assert_eq!(v["r0"][1][0], json!([-3.0, 0.0]));
    let f = tmp("triple.json");
    std::fs::write(&f, serde_json::to_string(&json!({"r0": v["r0"], "r2": v["r2"], "r4": v["r4"]})).unwrap()).unwrap();
    let o = run(&["nahm", "certify", "--in", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_out(&o)["irreducible"], true);

    let z = json!([[[0.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]]);
    std::fs::write(&f, serde_json::to_string(&json!({"r0": z, "r2": z, "r4": z})).unwrap()).unwrap();
    let o = run(&["nahm", "certify", "--in", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json_out(&o)["pass"], false);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["nahm", "integrate", "--k", "0"],
        vec!["nahm", "integrate", "--k", "65"],
        vec!["nahm", "integrate", "--k", "2", "--z0", "1.2", "--z1", "0.8"],
        vec!["nahm", "integrate", "--k", "2", "--z1", "2.5"],
        vec!["nahm", "integrate", "--k", "2", "--step", "0"],
        vec!["nahm", "integrate"],
        vec!["bundle-check", "--a", "0", "--b", "0", "--c", "0"],
        vec!["frobnicate"],
        vec!["identities", "--max-m", "ten"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
    let o = bin().args(["identities", "--max-m", "1"]).env("NAHM5_THREADS", "zero").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn numerical_abort_exits_1_with_diagnostic() {
    let e = json!([[[0.0, 0.0], [40.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]]);
    let h = json!([[[-40.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [40.0, 0.0]]]);
    let f = json!([[[0.0, 0.0], [0.0, 0.0]], [[-40.0, 0.0], [0.0, 0.0]]]);
    let z = json!([[[0.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]]);
    let init = tmp("blowup.json");
    std::fs::write(&init, json!({"z": 0.1, "pencil": {"k": 2, "a": [e, z, h, z, f]}}).to_string()).unwrap();
    let o = run(&["nahm", "integrate", "--init", init.to_str().unwrap(), "--z1", "1.9", "--step", "0.01"]);
    assert_eq!(o.status.code(), Some(1));
    let text = String::from_utf8_lossy(&o.stdout);
    let diag: Value = serde_json::from_str(text.trim_start_matches(|c| c != '{')).unwrap();
    assert_eq!(diag["error"], "non_finite");
    let z = diag["last_z"].as_f64().unwrap();
    assert!(z > 0.1 && z < 1.9);
}

#[test]
fn reports_are_deterministic_across_thread_counts() {
    let go = |threads: &str| {
        bin().args(["twistor-check", "--seed", "11", "--samples", "15"]).env("NAHM5_THREADS", threads).output().unwrap()
    };
    let (a, b) = (go("1"), go("4"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let seeded = json_out(&a);
    assert!(seeded["reports"].as_array().unwrap().iter().any(|r| r["metadata"]["seed"] == 11));
}

#[test]
fn verify_all_passes() {
    let o = bin().args(["verify-all", "--max-k", "3", "--seed", "7"]).env("NAHM5_THREADS", "2").output().unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let v = json_out(&o);
    assert_table(&v, true);
    let names: Vec<&str> = v["reports"].as_array().unwrap().iter().map(|r| r["check"].as_str().unwrap()).collect();
    for want in ["isospectrality_k2", "residue_algebra", "tau_involution", "verify_extension", "fault_drift_monitor"] {
        assert!(names.contains(&want), "{want}");
    }
}
