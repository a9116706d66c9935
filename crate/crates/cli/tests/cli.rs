//! End-to-end checks of the `scs` binary: file formats, records, exit
//! codes, determinism.

use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn scs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", stderr(out));
    let text = String::from_utf8_lossy(&out.stdout);
    serde_json::from_str(text.lines().next().expect("one record")).expect("valid json")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write_graph(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("scs-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

const C5: &str = "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 1 5\n";
const K4: &str = "p edge 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n";
const C4: &str = "p edge 4 4\ne 1 2\ne 2 3\ne 3 4\ne 1 4\n";

#[test]
fn solve_records_yes_with_verified_certificate() {
    let dir = tmp_dir("yes");
    let file = write_graph(&dir, "c5.col", C5);
    let out = scs(&["solve", file.to_str().unwrap(), "--algo", "mnc", "--verify"]);
    let record = stdout_json(&out);
    assert_eq!(record["verdict"], "yes");
    assert_eq!(record["verified"], true);
    assert_eq!(record["algorithm"], "mnc");
    assert!(!record["certificate"]["s"].as_array().unwrap().is_empty());
}

#[test]
fn solve_records_no_for_cliques() {
    let dir = tmp_dir("no");
    let file = write_graph(&dir, "k4.col", K4);
    for algo in ["general", "mnc", "csp", "oracle", "auto"] {
        let out = scs(&["solve", file.to_str().unwrap(), "--algo", algo]);
        let record = stdout_json(&out);
        assert_eq!(record["verdict"], "no", "algo {algo}");
        assert!(record.get("certificate").is_none());
    }
}

#[test]
fn poly_solves_c4_and_refuses_sparse_graphs() {
    let dir = tmp_dir("poly");
    let c4 = write_graph(&dir, "c4.col", C4);
    let out = scs(&["solve", c4.to_str().unwrap(), "--algo", "poly", "--verify"]);
    let record = stdout_json(&out);
    assert_eq!(record["verdict"], "yes");
    assert_eq!(record["verified"], true);

    let c5 = write_graph(&dir, "c5.col", C5);
    let out = scs(&["solve", c5.to_str().unwrap(), "--algo", "poly"]);
    assert_eq!(out.status.code(), Some(3), "stderr: {}", stderr(&out));
}

#[test]
fn parse_errors_exit_two_with_line_numbers() {
    let dir = tmp_dir("parse");
    for (name, text, needle) in [
        ("loop.col", "p edge 2 1\ne 1 1\n", "line 2"),
        ("count.col", "p edge 3 2\ne 1 2\ne 2 3\ne 1 3\n", "declares 2 edges"),
        ("dup.col", "p edge 3 2\ne 1 2\ne 2 1\n", "duplicate edge"),
    ] {
        let file = write_graph(&dir, name, text);
        let out = scs(&["solve", file.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        assert!(stderr(&out).contains(needle), "{name}: {}", stderr(&out));
    }
}

#[test]
fn gen_round_trips_and_solves() {
    let dir = tmp_dir("gen");
    let file = dir.join("ext.col");
    let out = scs(&[
        "gen", "extremal", "2", "2", "2", "-o", file.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&file).unwrap();
    assert!(text.starts_with("p edge 6 10\n"));

    let out = scs(&["solve", file.to_str().unwrap(), "--algo", "auto", "--verify"]);
    let record = stdout_json(&out);
    assert_eq!(record["verdict"], "yes");
    assert_eq!(record["verified"], true);

    // same invocation twice: identical records modulo wall time
    let rerun = scs(&["solve", file.to_str().unwrap(), "--algo", "auto", "--verify"]);
    let mut a = stdout_json(&out);
    let mut b = stdout_json(&rerun);
    a.as_object_mut().unwrap().remove("wall_ms");
    b.as_object_mut().unwrap().remove("wall_ms");
    assert_eq!(a, b);
}

#[test]
fn gen_random_is_seed_deterministic() {
    let out1 = scs(&["gen", "random", "--n", "8", "--m", "12", "--seed", "5"]);
    let out2 = scs(&["gen", "random", "--n", "8", "--m", "12", "--seed", "5"]);
    assert!(out1.status.success());
    assert_eq!(out1.stdout, out2.stdout);

    let infeasible = scs(&["gen", "random", "--n", "5", "--m", "2", "--seed", "1"]);
    assert_eq!(infeasible.status.code(), Some(2));
}

#[test]
fn gen_gadget_lifts_degree() {
    let dir = tmp_dir("gadget");
    let base = write_graph(&dir, "p3.col", "p edge 3 2\ne 1 2\ne 2 3\n");
    let lifted = dir.join("lifted.col");
    let out = scs(&[
        "gen", "gadget", base.to_str().unwrap(), "--c", "3",
        "-o", lifted.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(&lifted).unwrap();
    assert!(text.starts_with("p edge 7 12\n"), "{text}");
}

#[test]
fn color3_examples() {
    let dir = tmp_dir("col");
    let k4 = write_graph(&dir, "k4.col", K4);
    let record = stdout_json(&scs(&["color3", k4.to_str().unwrap()]));
    assert_eq!(record["verdict"], "no");

    let c5 = write_graph(&dir, "c5.col", C5);
    let record = stdout_json(&scs(&["color3", c5.to_str().unwrap(), "--verify"]));
    assert_eq!(record["verdict"], "yes");
    assert_eq!(record["verified"], true);
    assert_eq!(record["colours"].as_array().unwrap().len(), 5);
}

#[test]
fn analyze_reports_table_values() {
    let out = scs(&["analyze", "--delta", "3,50"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let records: Vec<Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(records.len(), 2);
    assert!((records[0]["lambda"].as_f64().unwrap() - 1.7069).abs() < 1e-4);
    assert!((records[0]["mu"].as_f64().unwrap() - 1.9259).abs() < 1e-4);
    assert!((records[1]["lambda"].as_f64().unwrap() - 1.0866).abs() < 1e-4);
}

#[test]
fn bench_emits_records_per_graph_and_algo() {
    let dir = tmp_dir("bench");
    let corpus = dir.join("corpus");
    std::fs::create_dir_all(&corpus).unwrap();
    write_graph(&corpus, "a-c5.col", C5);
    write_graph(&corpus, "b-k4.col", K4);
    let out = scs(&[
        "bench", corpus.to_str().unwrap(), "--algos", "mnc,general", "--verify",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = String::from_utf8_lossy(&out.stdout);
    let records: Vec<Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(records.len(), 4);
    // ordered by input name, algos in the requested order
    assert_eq!(records[0]["input"], "a-c5.col");
    assert_eq!(records[0]["algorithm"], "mnc");
    assert_eq!(records[1]["input"], "a-c5.col");
    assert_eq!(records[1]["algorithm"], "general");
    assert_eq!(records[2]["input"], "b-k4.col");
    for r in &records {
        assert!(r["verdict"] == "yes" || r["verdict"] == "no");
        if r["verdict"] == "yes" {
            assert_eq!(r["verified"], true);
        }
    }
}

#[test]
fn solve_refuses_tiny_and_disconnected_graphs() {
    let dir = tmp_dir("refuse");
    let tiny = write_graph(&dir, "tiny.col", "p edge 2 1\ne 1 2\n");
    assert_eq!(scs(&["solve", tiny.to_str().unwrap()]).status.code(), Some(3));

    let split = write_graph(&dir, "split.col", "p edge 4 2\ne 1 2\ne 3 4\n");
    assert_eq!(scs(&["solve", split.to_str().unwrap()]).status.code(), Some(3));

    let grown = write_graph(&dir, "grown.col", {
        // path on 23 vertices exceeds the oracle guard
        let mut s = String::from("p edge 23 22\n");
        for v in 1..23 {
            s.push_str(&format!("e {v} {}\n", v + 1));
        }
        Box::leak(s.into_boxed_str())
    });
    let out = scs(&["solve", grown.to_str().unwrap(), "--algo", "oracle"]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
}
