use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_waring-sieve"));
    c.env_remove("WARING_SIEVE_JOBS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    std::fs::read_to_string(path).unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn golden_count_rows() {
    let o = run(&["count", "--p", "5", "--m", "2", "--k", "2", "--all-b"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("count_p5_m2_k2.jsonl"));
}

#[test]
fn golden_bound_rows() {
    let o = run(&["check", "--bound", "zhuwan", "--p", "7", "--m", "2", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("check_zhuwan_p7_m2_k3.jsonl"));
    let o = run(&["check", "--bound", "expsum", "--p", "5", "--m", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), golden("check_expsum_p5_m2.csv"));
}

#[test]
fn golden_waring_rows() {
    let o = run(&["waring", "--p", "5", "--m", "2", "--distinct"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("waring_distinct_p5_m2.jsonl"));
}

#[test]
fn every_row_is_versioned() {
    let commands: [&[&str]; 6] = [
        &["total", "--p", "7", "--m", "2"],
        &["phi", "--p", "13", "--m", "3"],
        &["audit", "--p", "7", "--m", "3", "--k", "2"],
        &["identity", "--which", "sieve", "--n", "4", "--k", "3"],
        &["waring", "--suite", "23"],
        &["check", "--bound", "os", "--p", "11", "--m-all-divisors"],
    ];
    for args in commands {
        let o = run(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        for line in stdout(&o).lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert_eq!(v["schema_version"], 1, "{args:?}");
        }
    }
}

#[test]
fn sweep_is_independent_of_jobs() {
    let args = ["sweep", "--command", "count", "--p-range", "3..29", "--m-all-divisors", "--algo", "all"];
    let one = bin().args(args).args(["--jobs", "1"]).output().unwrap();
    let many = bin().args(args).args(["--jobs", "8"]).output().unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert!(!one.stdout.is_empty());
    assert_eq!(one.stdout, many.stdout);
    let env = bin().args(args).env("WARING_SIEVE_JOBS", "3").output().unwrap();
    assert_eq!(one.stdout, env.stdout);
}

#[test]
fn out_file_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.csv");
    let o = run(&["total", "--p", "5", "--m", "4", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("schema_version,command,p,m,set,k,b,count,algo,agreement"));
    let counts: Vec<&str> = lines.map(|l| l.split(',').nth(7).unwrap()).collect();
    assert_eq!(counts, ["1", "4", "6", "4", "1"]);
}

#[test]
fn usage_errors() {
    for args in [
        &["count", "--p", "9", "--m", "1", "--k", "1"][..],
        &["count", "--p", "2", "--m", "1", "--k", "1"],
        &["count", "--p", "7", "--m", "2", "--k", "9"],
        &["audit", "--p", "7", "--m", "4", "--k", "2"],
        &["check", "--bound", "thm11", "--p", "7", "--m", "6", "--k", "1"],
        &["count", "--p", "7", "--m", "1", "--k", "1", "--jobs", "0"],
        &["count", "--p", "7", "--set", "1,8", "--k", "1"],
        &["waring"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn conditional_bounds_do_not_fail_the_run() {
    let o = run(&["check", "--bound", "open", "--p", "13", "--m-all-divisors"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["check", "--bound", "os-log2", "--p", "13", "--m", "3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn random_sets_are_seeded() {
    let args = ["check", "--bound", "lemma31", "--p", "11", "--random-sets", "5", "--seed", "9"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let first: serde_json::Value = serde_json::from_str(stdout(&a).lines().next().unwrap()).unwrap();
    assert_eq!(first["seed"], 9);
    let c = run(&["check", "--bound", "lemma31", "--p", "11", "--random-sets", "5", "--seed", "10"]);
    assert_ne!(a.stdout, c.stdout);
}
