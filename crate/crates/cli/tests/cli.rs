use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trifference")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn verify_exit_codes_follow_the_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.txt", "000\n111\n222\n");
    assert_eq!(run(&["verify", "--code", &good, "--m", "3"]).status.code(), Some(0));
    let bad = write(dir.path(), "bad.txt", "# three words\n000\n111\n012\n");
    let o = run(&["verify", "--code", &bad, "--m", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("no"));
    let broken = write(dir.path(), "broken.txt", "01x\n");
    assert_eq!(run(&["verify", "--code", &broken, "--m", "1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--code", "/nonexistent/file", "--m", "1"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["bounds", "--n", "10"]).status.code(), Some(2));
    assert_eq!(run(&["bounds", "--n", "10", "--m", "2", "--bogus"]).status.code(), Some(2));
}

#[test]
fn exact_trifferent_prints_the_value() {
    let o = run(&["exact", "trifferent", "--n", "4", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("value: 4"));
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.txt");
    let o = run(&["exact", "trifferent", "--n", "5", "--m", "2", "--json", "--witness", w.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["value"], 6);
    assert_eq!(v["optimal"], true);
    assert_eq!(v["witness_file"], w.to_str().unwrap());
    let check = run(&["verify", "--code", w.to_str().unwrap(), "--m", "2"]);
    assert_eq!(check.status.code(), Some(0));
    let slice = run(&["exact", "trifferent", "--n", "4", "--m", "1", "--slice-twos", "0"]);
    assert!(stdout(&slice).contains("value: 2"));
}

#[test]
fn exhausted_budget_exits_with_three() {
    let o = run(&["exact", "trifferent", "--n", "6", "--m", "1", "--budget-seconds", "0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("optimal: false"));
}

#[test]
fn blocking_search_and_lp_export() {
    let o = run(&["exact", "blocking", "--k", "3", "--m", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["value"], 12);
    assert_eq!(run(&["exact", "blocking", "--k", "3", "--m", "4"]).status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let lp = dir.path().join("c.lp");
    assert_eq!(run(&["exact", "blocking", "--k", "3", "--m", "2", "--export-lp", lp.to_str().unwrap()]).status.code(), Some(0));
    let text = std::fs::read_to_string(&lp).unwrap();
    assert!(text.starts_with("Minimize\n obj: x1 + "));
    assert_eq!(text.lines().filter(|l| l.starts_with(" c")).count(), 104);
    assert!(text.trim_end().ends_with("End"));
}

#[test]
fn constructions_verify() {
    let dir = tempfile::tempdir().unwrap();
    let set = dir.path().join("set.json");
    let o = run(&["construct", "lines", "--k", "4", "--m", "2", "--seed", "3", "--out", set.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(run(&["verify-blocking", "--set", set.to_str().unwrap(), "--m", "2"]).status.code(), Some(0));

    let code = dir.path().join("alt.txt");
    let o = run(&["construct", "alteration", "--n", "10", "--m", "1", "--seed", "1", "--out", code.to_str().unwrap()]);
    assert!(matches!(o.status.code(), Some(0 | 1)));
    assert_eq!(run(&["verify", "--code", code.to_str().unwrap(), "--m", "1"]).status.code(), Some(0));
    // same seed, same output
    let again = run(&["construct", "alteration", "--n", "10", "--m", "1", "--seed", "1"]);
    assert_eq!(stdout(&again), std::fs::read_to_string(&code).unwrap());

    let base = write(dir.path(), "base.txt", "000\n111\n222\n");
    let o = run(&["construct", "lift", "--code", &base, "--m", "2"]);
    assert!(stdout(&o).contains("111111"));
}

#[test]
fn linear_verification() {
    let dir = tempfile::tempdir().unwrap();
    let simplex = write(dir.path(), "g.json", r#"{"k":2,"n":4,"rows":[[0,1,1,1],[1,0,1,2]]}"#);
    let o = run(&["verify-linear", "--gen", &simplex, "--m", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(run(&["verify-linear", "--gen", &simplex, "--m", "2", "--mode", "minimal"]).status.code(), Some(1));
    assert_eq!(run(&["verify-linear", "--gen", &simplex, "--m", "2", "--mode", "trifferent"]).status.code(), Some(1));
}

#[test]
fn bounds_curve_and_counts() {
    let o = run(&["bounds", "--n", "100", "--m", "10", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["lower"]["log2"].as_f64().unwrap() <= v["upper"]["log2"].as_f64().unwrap());
    assert!(!v["upper"]["chain"].as_array().unwrap().is_empty());

    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("curve.csv");
    assert_eq!(run(&["curve", "--grid-step", "0.01", "--out", csv.to_str().unwrap()]).status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("lambda,lower_rate,"));
    assert_eq!(text.lines().count(), 102);

    let o = stdout(&run(&["geometry", "count", "--k", "3"]));
    assert!(o.contains("points: 13") && o.contains("lines: 13") && o.contains("affine targets: 104"));
    assert!(o.contains("4/13"));
}

#[test]
fn nonlinear_table() {
    let o = run(&["tables", "--which", "nonlinear"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<Vec<String>> =
        stdout(&o).lines().skip(2).map(|l| l.split_whitespace().map(String::from).collect()).collect();
    let find = |n: &str, m: &str| rows.iter().find(|r| r[0] == n && r[1] == m).map(|r| r[2].clone());
    assert_eq!(find("4", "2").as_deref(), Some("4"));
    assert_eq!(find("6", "2").as_deref(), Some("6"));
    assert_eq!(find("7", "3").as_deref(), Some("4"));
    assert_eq!(find("6", "1").as_deref(), Some("13"));
}
