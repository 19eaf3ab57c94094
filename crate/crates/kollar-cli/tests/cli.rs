//! End-to-end tests of the `kollar` binary: pinned outputs, exit codes, and
//! the JSON/CSV encoding contracts.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kollar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8")
}

#[test]
fn pinned_kollar_json() {
    assert_eq!(
        stdout(&["kollar", "2", "2", "2", "2", "--json"]).trim(),
        r#"{"wstar":5,"mu":[3,1,2,4],"pg":0,"euler":9,"ksq":"3"}"#
    );
}

#[test]
fn pinned_rootcover_json() {
    assert_eq!(
        stdout(&["rootcover", "8", "1", "1", "3", "3", "--json"]).trim(),
        r#"{"pg":2,"euler":36,"ksq":"0"}"#
    );
}

#[test]
fn pinned_verify_pg1() {
    let out = run(&["verify", "pg1", "--nmax", "75", "--json"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("8 classes"));
}

#[test]
fn json_round_trips_byte_identically() {
    for args in [
        vec!["kollar", "2", "3", "5", "4", "--identity", "--contraction", "--json"],
        vec!["rootcover", "29", "1", "2", "4", "22", "--ledger", "--json"],
        vec!["hj", "29", "7", "--json"],
        vec!["classify", "--nmax", "12", "--pg", "0", "--json"],
        vec!["dedekind", "5", "7", "29", "--json"],
        vec!["sample-generic", "--n", "101", "--count", "10", "--seed", "3", "--json"],
    ] {
        let text = stdout(&args);
        let parsed: serde_json::Value = serde_json::from_str(text.trim()).expect("valid JSON");
        let reserialized = serde_json::to_string(&parsed).expect("serialize");
        assert_eq!(text.trim(), reserialized, "round trip differs for {args:?}");
    }
}

#[test]
fn json_and_csv_encode_identical_values() {
    let json: serde_json::Value =
        serde_json::from_str(stdout(&["classify", "--nmax", "10", "--pg", "0", "--json"]).trim())
            .expect("valid JSON");
    let csv = stdout(&["classify", "--nmax", "10", "--pg", "0", "--csv"]);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,mu1,mu2,mu3,mu4,orbit_size,pg"));
    let rows = json.as_array().expect("array");
    let csv_rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), csv_rows.len());
    for (obj, line) in rows.iter().zip(csv_rows) {
        let expected: Vec<String> = ["n", "mu1", "mu2", "mu3", "mu4", "orbit_size", "pg"]
            .iter()
            .map(|k| obj[*k].to_string())
            .collect();
        assert_eq!(expected.join(","), line);
    }
}

#[test]
fn classify_rows_are_sorted() {
    let csv = stdout(&["classify", "--nmax", "20", "--pg", "1", "--csv"]);
    let keys: Vec<Vec<i64>> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').take(5).map(|x| x.parse().unwrap()).collect())
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn invalid_input_exits_two() {
    assert_eq!(run(&["kollar", "1", "1", "1", "1"]).status.code(), Some(2));
    assert_eq!(run(&["rootcover", "6", "2", "1", "1", "2"]).status.code(), Some(2));
    assert_eq!(run(&["dedekind", "2", "3", "4"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn verify_campaigns_exit_zero() {
    for target in [
        vec!["verify", "pg0", "--nmax", "15"],
        vec!["verify", "bounds", "--nmax", "60"],
        vec!["verify", "corollaries", "--nmax", "60"],
        vec!["verify", "reciprocity", "--nmax", "40"],
        vec!["verify", "noether", "--nmax", "10"],
    ] {
        let mut args = target.clone();
        args.push("--quiet");
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "{target:?} failed");
        assert!(out.stdout.is_empty(), "--quiet printed output for {target:?}");
    }
}

#[test]
fn construct_pg_reports_requested_genus() {
    let v: serde_json::Value =
        serde_json::from_str(stdout(&["construct-pg", "7", "--json"]).trim()).expect("valid JSON");
    assert_eq!(v["g"], 7);
    assert_eq!(v["pg"], 7);
    assert_eq!(v["n"], 22);
}
