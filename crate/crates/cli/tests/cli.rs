use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn matchsat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matchsat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const CONTRADICTION: &str = "p cnf 1 2\n1 0\n-1 0\n";

#[test]
fn solve_exit_codes() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.cnf", CONTRADICTION);
    assert_eq!(matchsat(&["solve", &f, "--k", "0"]).status.code(), Some(10));
    assert_eq!(
        matchsat(&["solve", &f, "--alpha", "2"]).status.code(),
        Some(20)
    );
    assert_eq!(
        matchsat(&["solve", &f, "--alpha", "1"]).status.code(),
        Some(10)
    );
    assert_eq!(
        matchsat(&["solve", &f, "--k", "-1"]).status.code(),
        Some(10)
    );
}

#[test]
fn solve_json_report() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.cnf", "p cnf 2 4\n1 0\n-1 0\n1 2 0\n-2 0\n");
    let out = matchsat(&["solve", &f, "--alpha", "3", "--json", "--mode", "exact"]);
    assert_eq!(out.status.code(), Some(10));
    let v = json(&out);
    assert_eq!(v["answer"], "yes");
    assert_eq!(v["alpha"], 3);
    assert_eq!(v["nu"], 2);
    assert_eq!(v["k"], 1);
    for key in ["nodes_expanded", "max_depth", "leaf_special_instances"] {
        assert!(v["stats"][key].is_u64(), "{key}");
    }
    for key in ["pure_literal", "resolve_singletons", "autarky", "expansion"] {
        assert!(v["rule_counts"][key].is_u64(), "{key}");
    }
    assert!(v["wall_time_ms"].is_number());
}

#[test]
fn reports_are_stable() {
    let dir = TempDir::new().unwrap();
    let gen = matchsat(&[
        "gen", "--family", "uniform", "--n", "9", "--m", "20", "--seed", "4",
    ]);
    let f = write(&dir, "g.cnf", std::str::from_utf8(&gen.stdout).unwrap());
    let run = || {
        let out = matchsat(&["solve", &f, "--k", "2", "--json", "--seed", "9"]);
        let mut v = json(&out);
        v.as_object_mut().unwrap().remove("wall_time_ms");
        (out.status.code(), v)
    };
    assert_eq!(run(), run());
}

#[test]
fn hitting_set_subcommand() {
    let dir = TempDir::new().unwrap();
    let star = write(&dir, "star.txt", "h 1 3\n1\n1\n1\n");
    let out = matchsat(&["hitting-set", &star, "--k", "2", "--json"]);
    assert_eq!(out.status.code(), Some(10));
    assert_eq!(json(&out)["hitting_set"], serde_json::json!([1]));
    let pair = write(&dir, "pair.txt", "h 2 2\n1\n2\n");
    assert_eq!(
        matchsat(&["hitting-set", &pair, "--k", "1"]).status.code(),
        Some(20)
    );
}

#[test]
fn check_agrees() {
    let out = matchsat(&[
        "check", "--family", "uniform", "--n", "8", "--m", "16", "--count", "100", "--seed", "7",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let out = matchsat(&[
        "check",
        "--family",
        "hypergraph",
        "--n",
        "6",
        "--m",
        "8",
        "--count",
        "30",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["disagreements"], 0);
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.cnf", CONTRADICTION);
    assert_eq!(matchsat(&["check", "--file", &f]).status.code(), Some(0));
}

#[test]
fn gen_writes_file_or_stdout() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("s.cnf");
    let args = [
        "gen",
        "--family",
        "special",
        "--n",
        "5",
        "--m",
        "9",
        "--max-len",
        "3",
        "--seed",
        "2",
    ];
    let to_stdout = matchsat(&args);
    assert_eq!(to_stdout.status.code(), Some(0));
    let mut with_out = args.to_vec();
    with_out.extend(["-o", path.to_str().unwrap()]);
    assert_eq!(matchsat(&with_out).status.code(), Some(0));
    assert_eq!(std::fs::read(Path::new(&path)).unwrap(), to_stdout.stdout);
    let text = String::from_utf8(to_stdout.stdout).unwrap();
    assert!(text.starts_with("p cnf 5 9\n"));
}

#[test]
fn usage_and_parse_errors() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.cnf", CONTRADICTION);
    let bad = write(&dir, "bad.cnf", "p cnf 1 1\n1 -1 0\n");
    assert_eq!(matchsat(&["solve", &f]).status.code(), Some(1));
    assert_eq!(
        matchsat(&["solve", &bad, "--k", "1"]).status.code(),
        Some(1)
    );
    assert_eq!(
        matchsat(&["solve", "/nonexistent.cnf", "--k", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(matchsat(&["frobnicate"]).status.code(), Some(1));
    let out = matchsat(&["solve", &bad, "--k", "1"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let gen = matchsat(&["gen", "--family", "special", "--n", "4", "--m", "2"]);
    assert_eq!(gen.status.code(), Some(1));
}

#[test]
fn resource_guards() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.cnf", CONTRADICTION);
    let out = matchsat(&["solve", &f, "--alpha", "2", "--node-budget", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("node budget"));
    let out = matchsat(&[
        "check", "--family", "uniform", "--n", "30", "--m", "5", "--count", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
