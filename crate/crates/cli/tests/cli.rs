use std::path::Path;
use std::process::{Command, Output};

fn interlearn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_interlearn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_into(dir: &Path, extra: &[&str]) {
    let mut args = vec![
        "run",
        "--graph",
        "cycle",
        "--n",
        "10",
        "--learner",
        "mwu",
        "--model",
        "drifting",
        "--R",
        "200",
        "--B",
        "4",
        "--p",
        "0.2",
        "--trials",
        "1",
        "--seed",
        "17",
        "--quiet",
        "--out",
        dir.to_str().unwrap(),
    ];
    args.extend_from_slice(extra);
    let out = interlearn(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    run_into(a.path(), &[]);
    run_into(b.path(), &[]);
    for name in ["rounds.csv", "summary.csv"] {
        let x = std::fs::read(a.path().join(name)).unwrap();
        let y = std::fs::read(b.path().join(name)).unwrap();
        assert!(!x.is_empty());
        assert_eq!(x, y, "{name} differs");
    }
    let rounds = std::fs::read_to_string(a.path().join("rounds.csv")).unwrap();
    assert!(rounds.starts_with("trial,round,query,target,feedback,mistake,noisy,cum_mistakes\n"));
    assert_eq!(rounds.lines().count(), 201);
}

#[test]
fn json_summary() {
    let dir = tempfile::tempdir().unwrap();
    run_into(dir.path(), &["--format", "json"]);
    let text = std::fs::read_to_string(dir.path().join("summary.json")).unwrap();
    assert!(text.contains("\"bound_name\": \"drifting\""));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.cfg");
    std::fs::write(&cfg, "graph = path\nn = 5\np = 0.3\ntrials = 2\nR = 30\nB = 1\n").unwrap();
    let out = interlearn(&["config", "--config", cfg.to_str().unwrap(), "--p", "0.1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("graph = path\n"));
    assert!(text.contains("p = 0.1\n"));
    assert!(text.contains("rounds = 30\n"));
}

#[test]
fn invalid_noise_is_rejected() {
    let out = interlearn(&["run", "--p", "0.6"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("field p"), "{err}");
}

#[test]
fn config_file_errors_carry_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "n = 4\n\nrounds = many\n").unwrap();
    let out = interlearn(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("bad.cfg:3"), "{err}");
}

#[test]
fn missing_graph_file() {
    let out = interlearn(&["run", "--graph", "file", "--graph_file", "/no/such/graph.txt"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("field graph_file"), "{err}");
}

#[test]
fn sweep_rows() {
    let out = interlearn(&[
        "sweep", "--axis", "p", "--values", "0.05,0.1,0.2", "--R", "100", "--B", "2", "--trials",
        "3",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    let empty = interlearn(&["sweep", "--axis", "p", "--values", ""]);
    assert_eq!(empty.status.code(), Some(2));
}

#[test]
fn bound_table_and_csv() {
    let out = interlearn(&["bound", "clique", "R=100", "B=10", "p=0.1"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("19"));
    let out = interlearn(&["bound", "star", "R=100", "B=10", "p=0.1", "--format", "csv"]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "bound,term,value\nstar,value,29.9\nstar,scale,1\nstar,value,29.9\n"
    );
    let out = interlearn(&["bound", "unified", "R=10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn chain_csv_matches_golden_rows() {
    let out = interlearn(&[
        "chain", "quasi_star", "--d", "4", "--p", "0.1", "--b", "0.05", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "state,0,1,2,3,4");
    assert_eq!(lines[2], "1,0.855,0,0.095,0.025,0.025");
    assert_eq!(lines[4], "3,0.05,0,0.855,0,0.095");
}

#[test]
fn graph_export_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.txt");
    let out = interlearn(&[
        "graph", "export", "--graph", "quasi_star", "--branches", "3", "--branch_len", "2",
        "--quiet", "--out", file.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = interlearn(&["graph", "inspect", "--graph", "file", "--graph_file", file.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("vertices   7"));
    assert!(text.contains("diameter   4"));
}

#[test]
fn transition_export() {
    let out = interlearn(&[
        "graph", "transition", "--graph", "path", "--n", "3", "--model", "drifting", "--R", "10",
        "--B", "5",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("n 3 directed 1\n"));
    assert!(text.contains("\n1 0 0.25 1\n"));
}
