use std::process::{Command, Output};

use grover_core::engine::{optimal_iterations, IterationTrace};
use serde_json::Value;

fn grover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grover"))
        .args(args)
        .output()
        .expect("spawn grover")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn run_exact_small_case_as_csv() {
    let o = grover(&["run", "--n", "2", "--x0", "11", "--format", "csv"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "iter,overlap_re,overlap_im,success_prob,predicted_prob,queries");
    assert_eq!(lines.len(), 3);
    assert!(lines[2].starts_with("1,") && lines[2].ends_with(",1"));
    assert!(stderr(&o).contains("matched"));
}

#[test]
fn run_writes_json_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = grover(&["run", "--n", "10", "--x0", "0x2a", "--seed", "4", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("queries 25"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let trace: IterationTrace = serde_json::from_value(v["trace"].clone()).unwrap();
    let k = optimal_iterations((1.0f64 / 32.0).asin()).unwrap();
    assert_eq!(trace.last().queries, k);
    assert!(trace.last().success_prob > 0.999);
    assert_eq!(v["config"]["x0"], "0x2a");
    assert!(v["geometry_report"]["max_prob_dev"].as_f64().unwrap() < 1e-9);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"n": 6, "x0_hex": "3f", "variant": "squared", "max_iters": 2, "seed": 9}"#).unwrap();
    let o = grover(&["run", "--config", cfg.to_str().unwrap(), "--iters", "3", "--format", "csv"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let last = text.lines().last().unwrap();
    assert!(last.starts_with("3,") && last.ends_with(",6"), "{last}");
}

#[test]
fn random_prep_needs_a_budget() {
    let o = grover(&["run", "--n", "8", "--prep", "random", "--iters", "auto"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("budget:K"));
    let o = grover(&["run", "--n", "8", "--prep", "random", "--iters", "budget:48", "--format", "csv"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("best iterate"));
}

#[test]
fn explicit_unitary_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("u.json");
    let u = grover_core::linalg::DenseUnitary::hadamard(3).unwrap();
    std::fs::write(&path, serde_json::to_string(&u).unwrap()).unwrap();
    let prep = format!("file:{}", path.display());
    let o = grover(&["run", "--n", "3", "--x0", "101", "--prep", &prep, "--format", "csv"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = grover(&["run", "--n", "4", "--x0", "0x1", "--prep", &prep]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("dimension"));
}

#[test]
fn ceiling_and_bad_input() {
    let o = grover(&["run", "--n", "30"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("--max-qubits"));
    let o = grover(&["run", "--n", "3", "--x0", "11"]);
    assert!(!o.status.success());
    let o = grover(&["run", "--n", "3", "--variant", "cubed"]);
    assert!(!o.status.success());
}

#[test]
fn sweep_is_deterministic() {
    let args = ["sweep", "--n-min", "2", "--n-max", "7", "--trials", "2", "--seed", "3"];
    let a = grover(&args);
    let b = grover(&args);
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 13);
    assert!(stderr(&a).contains("slope"));
}

#[test]
fn sweep_with_zero_trials_writes_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.csv");
    let o = grover(&["sweep", "--n-max", "5", "--trials", "0", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(std::fs::read_to_string(&out).unwrap().lines().count(), 1);
}

#[test]
fn verify_single_check_and_unknown_name() {
    let o = grover(&["verify", "--only", "theorem1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("theorem1") && text.contains("PASS"));
    assert!(text.contains("1 checks, 0 failed"));
    let o = grover(&["verify", "--only", "nonsense"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("available"));
}
