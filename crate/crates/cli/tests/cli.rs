use std::process::{Command, Output};

const KRONECKER: &str = r#"{"family":"kronecker","params":{}}"#;
const RS: &str = r#"{"family":"rudin_shapiro","params":{}}"#;

fn edisc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edisc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn generate_lists_terms() {
    let o = edisc(&["generate", RS, "--count", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "n,a_n\n1,0\n2,1\n3,2\n4,4\n5,5\n6,7\n");

    let o = edisc(&["generate", r#"{"family":"floor_power","params":{"c":1.5}}"#, "--count", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["terms"], serde_json::json!([1, 2, 5, 8, 11]));
}

#[test]
fn spec_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.json");
    std::fs::write(&path, r#"{"family":"polynomial","params":{"coefficients":[0,0,1]}}"#).unwrap();
    let o = edisc(&["generate", path.to_str().unwrap(), "--count", "3"]);
    assert_eq!(stdout(&o), "n,a_n\n1,1\n2,4\n3,9\n");
}

#[test]
fn energy_csv_and_backends() {
    let o = edisc(&["energy", KRONECKER, "--checkpoints", "3,10,100"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "N,E,backend\n3,19,convolution\n10,670,convolution\n100,666700,convolution\n");
    let o = edisc(&["energy", KRONECKER, "--checkpoints", "3,10", "--backend", "bruteforce"]);
    assert_eq!(stdout(&o), "N,E,backend\n3,19,bruteforce\n10,670,bruteforce\n");
    let o = edisc(&["energy", KRONECKER, "--checkpoints", "2^8,2^9,2^10", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let slope = v["kappa_fit"]["slope"].as_f64().unwrap();
    assert!((2.95..=3.0).contains(&slope));
}

#[test]
fn discrepancy_single_alpha_and_medians() {
    let o = edisc(&["discrepancy", KRONECKER, "--checkpoints", "1,2,10", "--alpha", "1/3"]);
    let out = stdout(&o);
    assert!(out.starts_with("N,Dstar,NDstar\n1,0.666666666666666"), "{out}");
    let o = edisc(&["discrepancy", RS, "--checkpoints", "16,32,64", "--alphas", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("N,median_NDstar,q25,q75\n16,"));
}

#[test]
fn expsum_rows() {
    let o = edisc(&["expsum", KRONECKER, "--checkpoints", "2,4,8", "--tol", "1e-6"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("N,I,fourth_moment,holder_bound,panels"));
    let row: Vec<f64> = lines.next().unwrap().split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!(row[0], 2.0);
    assert!((row[1] - 4.0 / std::f64::consts::PI).abs() < 1e-5);
    assert!((row[2] - 6.0).abs() < 1e-9);
}

#[test]
fn verify_suites_pass() {
    let o = edisc(&["rs-verify", "--max-n", "8", "--max-l", "20000", "--alphas", "10", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["checks"].as_array().unwrap().len(), 7);
    let o = edisc(&["verify", "--suite", "energy"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("energy.backends_agree,true"));
}

#[test]
fn exit_codes() {
    assert_eq!(edisc(&["energy", r#"{"family":"bogus"}"#]).status.code(), Some(2));
    assert_eq!(edisc(&["energy", KRONECKER, "--checkpoints", "5,3"]).status.code(), Some(2));
    assert_eq!(edisc(&["generate", "/no/such/spec.json"]).status.code(), Some(2));
    assert_eq!(edisc(&["rs-verify", "--max-n", "30"]).status.code(), Some(2));
    assert_eq!(edisc(&["frobnicate"]).status.code(), Some(2));
    let budget = edisc(&["energy", KRONECKER, "--checkpoints", "10,100", "--backend", "bruteforce"]);
    assert_eq!(budget.status.code(), Some(3));
    let overflow = edisc(&["generate", r#"{"family":"lacunary","params":{"ratio":2.0}}"#, "--count", "64"]);
    assert_eq!(overflow.status.code(), Some(3));
}

#[test]
fn experiment_artifacts_and_rerun() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let o = edisc(&[
        "experiment", RS, "--out", out.to_str().unwrap(), "--checkpoints", "2^6,2^7,2^8,2^9", "--alphas", "8", "--seed", "7",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    for f in ["report.json", "energy_profile.csv", "median_profile.csv", "holder.csv"] {
        assert!(out.join(f).exists(), "{f}");
    }
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["config"]["seed"], 7);
    assert!(report["generated_at"].is_string());

    let path = out.join("report.json");
    let o = edisc(&["experiment", "--from-report", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));

    let mut tampered = report.clone();
    let slope = tampered["tau_fit"]["slope"].as_f64().unwrap();
    tampered["tau_fit"]["slope"] = serde_json::json!(slope + 1e-12);
    let bad = dir.path().join("tampered.json");
    std::fs::write(&bad, serde_json::to_string(&tampered).unwrap()).unwrap();
    assert_eq!(edisc(&["experiment", "--from-report", bad.to_str().unwrap()]).status.code(), Some(1));
}
