use std::process::{Command, Output};

use serde_json::Value;

fn jonescope(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jonescope"))
        .args(args)
        .env_remove("JONESCOPE_PRECISION")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn unknot_jones() {
    let out = jonescope(&["jones", "--knot", "unknot", "--n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with(r#"{"result":{"terms":[[0,"1"]]}"#), "{text}");
}

#[test]
fn jones_check_and_root() {
    let out = jonescope(&["jones", "--knot", "4_1", "--n", "4", "--check", "--root", "4", "--precision", "30"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["transfer_agrees"], Value::Bool(true));
    assert_eq!(v["config"]["precision_digits"], 30);
    assert!(v["root"]["value"][0].is_f64());
}

#[test]
fn parallel_matches_serial() {
    let one = json(&jonescope(&["jones", "--knot", "5_2", "--n", "6", "--threads", "1"]));
    let many = json(&jonescope(&["jones", "--knot", "5_2", "--n", "6", "--threads", "4"]));
    assert_eq!(one["result"], many["result"]);
    assert_eq!(one["states_visited"], many["states_visited"]);
}

#[test]
fn precision_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_jonescope"))
        .args(["lob", "--theta", "1"])
        .env("JONESCOPE_PRECISION", "40")
        .output()
        .unwrap();
    assert_eq!(json(&out)["config"]["precision_digits"], 40);
    let out = Command::new(env!("CARGO_BIN_EXE_jonescope"))
        .args(["lob", "--theta", "1"])
        .env("JONESCOPE_PRECISION", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn corpus_table() {
    let a = jonescope(&["corpus", "--out", "csv"]);
    let b = jonescope(&["corpus", "--out", "csv"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# jonescope "));
    assert!(lines.next().unwrap().starts_with("# config: {"));
    assert_eq!(lines.next(), Some("name,crossings,writhe,c,max_width,has_pd"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.iter().any(|r| r.starts_with("0_1,0,0,")));
    assert!(rows.iter().any(|r| r.starts_with("3_1,3,")));
    for k in ["4_1", "5_2", "6_1"] {
        assert!(rows.iter().any(|r| r.starts_with(&format!("{k},"))));
    }
}

#[test]
fn borromean_scan_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("scan.csv");
    let out = jonescope(&["borromean", "--scan", "250,500,1000,2000", "--csv", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["monotone"], Value::Bool(true));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    assert_eq!(r.headers().unwrap(), vec!["n", "normalized", "residual", "relative"]);
    let residuals: Vec<f64> = r.records().map(|x| x.unwrap()[2].parse::<f64>().unwrap().abs()).collect();
    assert_eq!(residuals.len(), 4);
    assert!(residuals.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn replay_reproduces_output() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.json");
    let out = jonescope(&["scan-near1", "--knot", "3_1", "--m", "2", "--N", "8", "--output", first.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let before = std::fs::read(&first).unwrap();
    std::fs::remove_file(&first).unwrap();
    let replay = dir.path().join("replay.json");
    std::fs::write(&replay, &before).unwrap();
    let out = jonescope(&["replay", replay.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(std::fs::read(&first).unwrap(), before);
}

#[test]
fn replay_of_csv_output() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("t.csv");
    let a = jonescope(&["rmax", "--n", "8,12", "--brute", "--out", "csv", "--output", csv.to_str().unwrap()]);
    assert_eq!(a.status.code(), Some(0));
    let before = std::fs::read(&csv).unwrap();
    let copy = dir.path().join("copy.csv");
    std::fs::write(&copy, &before).unwrap();
    let out = jonescope(&["replay", copy.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(&csv).unwrap(), before);
}

#[test]
fn verify_mmr_suite() {
    let out = jonescope(&["verify", "--suite", "mmr", "--knot", "3_1", "--order", "8"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json(&out)["result"][0]["passed"], Value::Bool(true));
}

#[test]
fn failing_check_exits_one() {
    let out = jonescope(&["verify", "--suite", "rmax"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["passed"], Value::Bool(false));
}

#[test]
fn usage_and_runtime_errors() {
    assert_eq!(jonescope(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(jonescope(&["jones", "--knot", "3_1"]).status.code(), Some(2));
    let out = jonescope(&["jones", "--knot", "9_99", "--n", "2"]);
    assert_eq!(out.status.code(), Some(3));
    let diag: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(diag["error"].as_str().unwrap().contains("9_99"));
    assert_eq!(jonescope(&["verify", "--suite", "nope"]).status.code(), Some(3));
    assert_eq!(jonescope(&["lob", "--out", "csv", "--theta", "1", "--csv", "/nonexistent/dir/x.csv"]).status.code(), Some(3));
}

#[test]
fn octa_and_lob() {
    let v = json(&jonescope(&["octa", "--alpha", "0.75", "--beta", "0.25", "--kappa", "0.5"]));
    assert_eq!(v["passed"], Value::Bool(true));
    assert!((v["result"]["volume"].as_f64().unwrap() - 3.663862376708876).abs() < 1e-9);
    let v = json(&jonescope(&["lob", "--theta", "0.7853981633974483"]));
    assert!((8.0 * v["result"][0]["value"].as_f64().unwrap() - 3.663862376708876).abs() < 1e-12);
}

#[test]
fn pd_and_morse_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let pd = dir.path().join("k.pd");
    let morse = dir.path().join("k.morse");
    std::fs::write(&pd, jonescope_core::corpus::pd_text("4_1").unwrap()).unwrap();
    std::fs::write(&morse, jonescope_core::corpus::morse_text("4_1").unwrap()).unwrap();
    let corpus = json(&jonescope(&["jones", "--knot", "4_1", "--n", "3"]))["result"].clone();
    let a = json(&jonescope(&["jones", "--pd", pd.to_str().unwrap(), "--n", "3"]));
    let b = json(&jonescope(&["jones", "--morse", morse.to_str().unwrap(), "--n", "3"]));
    assert_eq!(a["result"], corpus);
    assert_eq!(b["result"], corpus);
    let out = jonescope(&["mmr", "--morse", morse.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn expansions() {
    let v = json(&jonescope(&["cyclotomic", "--knot", "4_1", "--max-k", "4", "--verify"]));
    assert_eq!(v["passed"], Value::Bool(true));
    assert!(v["result"].as_array().unwrap().iter().all(|h| h["terms"] == serde_json::json!([[0, "1"]])));
    let v = json(&jonescope(&["mmr", "--knot", "4_1", "--order", "6"]));
    assert_eq!(v["passed"], Value::Bool(true));
    let v = json(&jonescope(&["loop", "--knot", "3_1", "--p", "1", "--order", "5"]));
    assert_eq!(v["passed"], Value::Bool(true));
    assert!(v["numerator"]["terms"].is_array());
}

#[test]
fn scans_and_bounds() {
    let v = json(&jonescope(&["scan-near2", "--knot", "3_1", "--p", "9", "--m", "10", "--N", "6"]));
    assert_eq!(v["symmetry_holds"], Value::Bool(true));
    let out = jonescope(&["bound-check", "--knot", "3_1", "--n-max", "8", "--alpha", "1,1", "--alpha-n-max", "10"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["growth"][0]["passed"], Value::Bool(true));
}

#[test]
fn qholo_runs() {
    let v = json(&jonescope(&["qholo", "--N", "10", "--verify"]));
    assert_eq!(v["passed"], Value::Bool(true));
    assert_eq!(v["result"][10]["terms"].as_array().unwrap().len(), 1 + 55);
    let dir = tempfile::tempdir().unwrap();
    let eq = dir.path().join("eq.txt");
    std::fs::write(&eq, "1\n0,0,-1\n0,0,1\n").unwrap();
    let init = dir.path().join("init.json");
    std::fs::write(&init, r#"[{"terms":[[4,"2"]]}]"#).unwrap();
    let v = json(&jonescope(&["qholo", "--eq", eq.to_str().unwrap(), "--init", init.to_str().unwrap(), "--N", "3", "--verify"]));
    assert_eq!(v["passed"], Value::Bool(true));
    assert_eq!(v["result"][3], serde_json::json!({"terms": [[4, "2"]]}));
    let v = json(&jonescope(&["qholo", "--knot", "4_1", "--N", "4"]));
    assert!(v["result"]["nonzero_residuals"].is_array());
}
