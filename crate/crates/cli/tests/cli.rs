use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hydrogen-fd"))
        .args(args)
        .env_remove("HYDROGEN_FD_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn exact_spectrum_csv() {
    let text = stdout(&["spectrum", "--delta", "1", "--n", "1..2", "--mode", "exact"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,delta,mu,energy,beta,q");
    assert!(lines[1].starts_with("1,1/1,0+1√(2),1-1√(2),"));
    assert!(lines[1].ends_with(",-1+1√(2)"));
    assert!(lines[2].starts_with("2,1/1,0+1√(5/4),1-1√(5/4),"));
    // β₁ = −arsinh(1)
    let beta: f64 = lines[1].split(',').nth(4).unwrap().parse().unwrap();
    assert!((beta + 1f64.asinh()).abs() < 1e-15);
}

#[test]
fn float_mode_uses_seventeen_digits() {
    let text = stdout(&["spectrum", "--delta", "1", "--n", "1", "--mode", "float"]);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[2], "1.4142135623730951e0");
    assert_eq!(row[5], "4.1421356237309503e-1");
}

#[test]
fn converge_ratios_approach_continuum_value() {
    let text = stdout(&["converge", "--n", "1..3", "--deltas", "1/5,1/10,1/20", "--mode", "float"]);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let headers = rdr.headers().unwrap().clone();
    assert_eq!(headers.iter().collect::<Vec<_>>(), ["n", "delta", "energy", "shift", "ratio"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 9);
    for row in &rows {
        let n: f64 = row[0].parse().unwrap();
        let delta: f64 = row[1].parse().unwrap();
        let energy: f64 = row[2].parse().unwrap();
        let ratio: f64 = row[4].parse().unwrap();
        let target = 1.0 / (8.0 * n.powi(4));
        assert!((ratio / target - 1.0).abs() < 0.05, "{row:?}");
        assert!((energy - (1.0 - (1.0 + (delta / n).powi(2)).sqrt()) / delta.powi(2)).abs() < 1e-12);
    }
    // ordered by n, then by the listed steps
    assert_eq!(&rows[3][0], "2");
    assert_eq!(&rows[4][1], "1.0000000000000001e-1");
}

#[test]
fn exact_mode_rejects_float_literals() {
    let out = run(&["spectrum", "--delta", "1e-1"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("1e-1"));
    assert!(run(&["spectrum", "--delta", "1e-1", "--mode", "float"]).status.success());
    // exact decimals are fine
    let text = stdout(&["spectrum", "--delta", "0.25", "--n", "1"]);
    assert!(text.lines().nth(1).unwrap().starts_with("1,1/4,"));
}

#[test]
fn invalid_flags_print_usage() {
    let out = run(&["spectrum", "--nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    let out = run(&["spectrum", "--n", "4..2"]);
    assert!(!out.status.success());
}

#[test]
fn output_is_deterministic() {
    let args = ["coeffs", "--delta", "1/2", "--n", "1..9", "--kmax", "8", "--output", "json"];
    assert_eq!(stdout(&args), stdout(&args));
    let args = ["converge", "--n", "1..6", "--deltas", "1/3,1/7,1/11"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn json_reports_carry_surd_objects() {
    let text = stdout(&["pollaczek", "--delta", "1", "--n", "2", "--jmax", "4", "--output", "json"]);
    let report: Value = serde_json::from_str(&text).unwrap();
    let rows = report["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0]["x"], serde_json::json!({"a": "0/1", "b": "1/1", "D": "5/4"}));
    for row in rows {
        let rec = &row["recursion"];
        let closed = &row["closed_form"];
        assert_eq!(rec["a"], closed["a"]);
        assert_eq!(rec["b"], closed["b"]);
    }
}

#[test]
fn coefficient_table_leading_terms() {
    let text = stdout(&["coeffs", "--delta", "1", "--n", "4", "--kmax", "2"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,k,alpha,inner");
    assert_eq!(lines[2], "4,1,0+1√(17/16),1/1");
    // 1 + (3n−1)δ²/(3n²(n−1)) at n = 4, δ = 1
    assert_eq!(lines[3], "4,2,155/144,1/1;11/144");
}

#[test]
fn out_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_hydrogen-fd"))
        .args(["wavefunction", "--delta", "1/2", "--n", "1..2", "--kmax", "5"])
        .env("HYDROGEN_FD_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(dir.path().join("wavefunction.csv")).unwrap();
    assert_eq!(text.lines().count(), 11);

    let explicit = dir.path().join("nested/report.json");
    let out = run(&["spectrum", "--output", "json", "--out", explicit.to_str().unwrap()]);
    assert!(out.status.success());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(explicit).unwrap()).unwrap();
    assert_eq!(report["rows"].as_array().unwrap().len(), 5);
}

#[test]
fn verify_report_passes_with_diagnostics() {
    let text = stdout(&["verify", "--delta", "1/2", "--n", "1..8", "--kmax", "40", "--output", "json"]);
    let report: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(report["all_passed"], true);
    let checks = report["checks"].as_object().unwrap();
    assert!(checks.len() >= 10);
    assert!(checks.values().all(|v| v == true));

    let p1 = &report["diagnostics"]["p1_convention"];
    assert_eq!(p1["agree"], false);
    // P₁(x₀) = 2x₀ − 2δ by the recursion, with x₀ = √(5/4)
    assert_eq!(p1["recursion"], serde_json::json!({"a": "-1/1", "b": "2/1", "D": "5/4"}));

    let trig = &report["diagnostics"]["trig_phase_ratios"];
    assert_eq!(trig["conjugate"]["consistent"], true);
    assert_eq!(trig["direct"]["consistent"], false);
    assert_eq!(trig["conjugate"]["degrees"].as_array().unwrap().len(), 7);
}

#[test]
fn verify_csv_lists_checks() {
    let text = stdout(&["verify", "--delta", "1", "--n", "1..3", "--kmax", "12"]);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    for row in rows.iter().filter(|r| !r[0].starts_with("diagnostic")) {
        assert_eq!(&row[1], "true", "{row:?}");
    }
    assert!(rows.iter().any(|r| &r[0] == "diagnostic_p1_convention"));
}
