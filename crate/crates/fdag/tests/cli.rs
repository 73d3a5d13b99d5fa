//! End-to-end tests of the command-line binary: exit codes, formats, and
//! deterministic generation.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fdag"))
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fdag-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn solve_counterexample() {
    let out = bin()
        .args(["solve", "--input"])
        .arg(fixtures().join("counterexample.fdag"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("optimum: 2"), "{text}");
    assert!(text.contains("solver: two_agents"), "{text}");
}

#[test]
fn solve_json_is_parseable() {
    let out = bin()
        .args(["solve", "--json", "--input"])
        .arg(fixtures().join("matching_4.fdag"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["optimum"], 2);
    assert_eq!(doc["agents"].as_array().unwrap().len(), 2);
}

#[test]
fn malformed_input_exits_2() {
    let path = scratch("broken.fdag");
    std::fs::write(&path, "fdag 9\nn 2 k 1\n").unwrap();
    let out = bin().args(["solve", "--input"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.starts_with("error[input]:"), "{err}");
}

#[test]
fn missing_file_exits_2() {
    let out = bin()
        .args(["solve", "--input", "/nonexistent/x.fdag"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_3() {
    let out = bin()
        .args(["solve", "--guess-budget", "1", "--oracle-budget", "1", "--input"])
        .arg(fixtures().join("random_9.fdag"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.starts_with("error[budget]:"), "{err}");
}

#[test]
fn env_budget_override_matches_flag() {
    let out = bin()
        .args(["solve", "--input"])
        .arg(fixtures().join("random_9.fdag"))
        .env("FDAG_GUESS_BUDGET", "1")
        .env("FDAG_ORACLE_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_decision_exit_codes() {
    let inst = scratch("decide.fdag");
    std::fs::write(&inst, "fdag 1\nn 3 k 2 d 1\na 0 1\na 0 2\n").unwrap();

    let good = scratch("good.alloc");
    std::fs::write(&good, "agent 0: 0\nagent 1: 1 2\n").unwrap();
    let out = bin()
        .args(["verify", "--input"])
        .arg(&inst)
        .arg("--allocation")
        .arg(&good)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("satisfied: true"));

    let bad = scratch("bad.alloc");
    std::fs::write(&bad, "agent 0: 1\nagent 1: 2\n").unwrap();
    let out = bin()
        .args(["verify", "--input"])
        .arg(&inst)
        .arg("--allocation")
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("satisfied: false"));
}

#[test]
fn classify_reports_tags_and_modules() {
    let out = bin()
        .args(["classify", "--json", "--input"])
        .arg(fixtures().join("figure_width_two.fdag"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["width"], 2);
    assert!(doc["tags"]
        .as_array()
        .unwrap()
        .iter()
        .any(|t| t == "width_le_2"));
}

#[test]
fn generation_is_deterministic() {
    let a = scratch("gen_a.fdag");
    let b = scratch("gen_b.fdag");
    for path in [&a, &b] {
        let out = bin()
            .args(["gen", "random-dag", "--n", "20", "--p", "0.2", "--seed", "9", "--k", "3", "--output"])
            .arg(path)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn reduce_coloring_writes_threshold() {
    let path = scratch("k3.fdag");
    let out = bin()
        .args(["reduce-coloring", "--vertices", "3", "--edges", "0-1,1-2,0-2", "--k", "3", "--output"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("n 18 k 3 d 6"), "{text}");
    let reference = std::fs::read_to_string(fixtures().join("k3_reduction.fdag")).unwrap();
    assert_eq!(text, reference);
}

#[test]
fn bench_runs_over_fixture_directory() {
    let out = bin().args(["bench", "--dir"]).arg(fixtures()).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("counterexample.fdag"));
    assert!(text.contains("two_agents"));
}
