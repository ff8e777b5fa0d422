//! End-to-end checks of the command-line contract: output schemas, exit
//! codes, and byte-level determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adelic")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn bressoud_sweep_clean() {
    let out = run(&["sweep", "bressoud", "--q", "2", "--lo", "5", "--hi", "200"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("q,p,ord,index,lhs,rhs,verdict,skip_reason\n"));
    assert!(text.contains(",ok,"));
    assert!(!text.contains("violation"));
}

#[test]
fn row_count_matches_window() {
    let out = run(&["sweep", "bernoulli", "--lo", "5", "--hi", "100"]);
    let text = stdout(&out);
    // one row per prime in [5, 100] plus the header
    assert_eq!(text.lines().count(), 1 + 23);
    for line in text.lines().skip(1) {
        assert!(line.contains(",ok,") || line.contains(",skip,"));
        if line.contains(",skip,") {
            assert!(!line.ends_with(','), "skips must carry reasons: {line}");
        }
    }
}

#[test]
fn deterministic_output() {
    let args = ["element", "build", "zA", "--k", "3", "--lo", "11", "--hi", "400", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn element_scan_pipeline() {
    let dir = std::env::temp_dir().join("adelic-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fib1.json");
    let out = run(&[
        "element", "build", "fib", "--q", "1", "--lo", "7", "--hi", "500",
        "--format", "json", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["scan", "relation", "--in", path.to_str().unwrap(), "--dmax", "2", "--hmax", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    // the minimal hit is x^2 - 1: coefficients [-1, 0, 1] constant-first
    assert!(text.contains("-1,\n          0,\n          1") || text.replace([' ', '\n'], "").contains("[-1,0,1]"));
}

#[test]
fn usage_and_capacity_exit_codes() {
    let out = run(&["element", "build", "nosuch", "--lo", "5", "--hi", "50"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["element", "build", "floorlog", "--lo", "2", "--hi", "99999999"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["sweep", "fib", "--q", "notanumber", "--lo", "5", "--hi", "50"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn disprove_and_smooth() {
    let out = run(&["log", "disprove", "--alpha", "2", "--rat", "1/1", "--hi", "1000"]);
    assert_eq!(stdout(&out).trim(), "witness,5");
    let out = run(&["exp", "smooth", "--f", "1,0", "--theta", "0.5", "--n", "20"]);
    let text = stdout(&out);
    let ns: Vec<&str> = text.split_whitespace().collect();
    assert!(ns.contains(&"4") && !ns.contains(&"6"));
}

#[test]
fn audit_verdict_drives_exit_code() {
    let dir = std::env::temp_dir().join("adelic-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("flog.csv");
    let out = run(&[
        "element", "build", "floorlog", "--lo", "2", "--hi", "10000",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["audit", "growth", "--in", path.to_str().unwrap(), "--dmax", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\"verdict\": \"consistent\""));
    // floor(sqrt p) fails the growth criterion at d = 2
    let path = dir.join("fsqrt.csv");
    run(&[
        "element", "build", "floorsqrt", "--lo", "2", "--hi", "10000",
        "--out", path.to_str().unwrap(),
    ]);
    let out = run(&["audit", "growth", "--in", path.to_str().unwrap(), "--dmax", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("\"verdict\": \"inconsistent\""));
}
