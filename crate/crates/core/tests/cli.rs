use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_udr-fusion"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn analyze_n5_defaults_to_p11() {
    let v = json(&["analyze", "dihedral", "--n", "5", "--i0", "2"]);
    assert_eq!(v["params"]["p"], 11);
    assert_eq!(v["params"]["omega_set"], serde_json::json!([1, 2]));
    assert_eq!(v["params"]["maximal_set"], serde_json::json!([1]));
    assert_eq!(v["reps"][0]["udr"], "Zp[[t]]/(t^2,pt)");
    assert_eq!(v["reps"][1]["udr"], "Zp");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn analyze_n6_i1() {
    let v = json(&["analyze", "dihedral", "--n", "6", "--p", "7", "--i0", "1"]);
    assert_eq!(v["fusion"]["numbers"], serde_json::json!({"1": 1, "6": 6, "12": 1}));
    for r in v["reps"].as_array().unwrap() {
        assert_eq!(r["udr"], "Zp");
    }
}

#[test]
fn output_is_deterministic_and_out_file_matches() {
    let dir = std::env::temp_dir().join(format!("udr-fusion-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let args = ["analyze", "dihedral", "--n", "8", "--i0", "2", "--out", path.to_str().unwrap()];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["analyze", "dihedral", "--n", "6", "--p", "6", "--i0", "1"][..],
        &["analyze", "dihedral", "--n", "6", "--p", "11", "--i0", "1"],
        &["analyze", "dihedral", "--n", "6", "--i0", "3"],
        &["analyze", "dihedral", "--n", "6", "--p", "6"],
        &["scan", "dihedral", "--n-min", "7", "--n-max", "5"],
        &["verify", "--check", "nonsense"],
        &["analyze", "abelian", "--orders", "3", "--p", "7", "--theta1", "3", "--theta2", "1"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(!err.trim().is_empty());
    }
}

#[test]
fn scan_csv_rows() {
    let out = run(&["scan", "dihedral", "--n-min", "3", "--n-max", "6", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,p,i0,k,in_omega,determinable,signature");
    assert_eq!(lines.len(), 7);
    assert!(!text.contains('"'));
}

#[test]
fn scan_flags_determinability() {
    let v = json(&["scan", "dihedral", "--n-min", "8", "--n-max", "12"]);
    for row in v["rows"].as_array().unwrap() {
        match row["n"].as_u64().unwrap() {
            8 => assert_eq!(row["determinable"], true),
            12 => assert_eq!(row["determinable"], false),
            _ => {}
        }
    }
}

#[test]
fn verify_suites_exit_0() {
    for args in [
        &["verify", "--check", "lemma410", "--n-max", "40"][..],
        &["verify", "--check", "prop48", "--n-max", "10"],
        &["verify", "--check", "oracle-h1"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn verify_thm11_table() {
    let v = json(&["verify", "--check", "thm11"]);
    let table: Vec<(u64, bool)> = v["determinability"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["n"].as_u64().unwrap(), r["determinable"].as_bool().unwrap()))
        .collect();
    let expect: Vec<(u64, bool)> = (4..=30)
        .step_by(2)
        .map(|n| (n, [4, 6, 8, 10, 14, 16, 22, 26].contains(&n)))
        .collect();
    assert_eq!(table, expect);
}

#[test]
fn abelian_cli() {
    let v = json(&[
        "analyze", "abelian", "--orders", "3", "--theta1", "2", "--theta2", "4",
    ]);
    assert_eq!(v["params"]["p"], 7);
    assert_eq!(v["reps"][0]["d1"], 0);
    assert_eq!(v["reps"][0]["d2"], 1);
    assert_eq!(v["reps"][0]["udr"], "Zp");
    assert_eq!(v["fusion"]["numbers"]["1"], 1);
}
