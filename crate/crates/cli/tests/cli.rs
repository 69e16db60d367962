use std::fs;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn qlg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlg"))
        .args(args)
        .env_remove("QLGAME_SEED")
        .stdin(Stdio::null())
        .output()
        .expect("run qlg")
}

fn json(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn close(v: &Value, want: f64, tol: f64) -> bool {
    (v.as_f64().unwrap() - want).abs() <= tol
}

#[test]
fn lattice_certifies_both_games() {
    for game in ["spin-half", "spin-one"] {
        let v = json(&qlg(&["lattice", "--game", game]));
        assert_eq!(v["passed"], Value::Bool(true), "{game}");
    }
}

#[test]
fn unknown_game_is_a_usage_error() {
    assert_eq!(qlg(&["lattice", "--game", "spin-two"]).status.code(), Some(2));
}

#[test]
fn symmetric_equilibrium_report() {
    let v = json(&qlg(&["equilibrium"]));
    let q = &v["quantum"];
    assert!(close(&q["lower_value"], 0.5, 1e-6));
    assert!(close(&q["upper_value"], 1.5, 1e-6));
    assert_eq!(q["saddle_exists"], Value::Bool(false));
    assert!(q["equilibria"].as_array().unwrap().is_empty());
    assert!(close(&v["classical"]["value"], 0.25, 1e-9));
    for x in v["classical"]["x"].as_object().unwrap().values() {
        assert!(close(x, 0.25, 1e-9));
    }
}

#[test]
fn asymmetric_equilibrium_has_saddle() {
    let v = json(&qlg(&[
        "equilibrium", "--theta-a", "10", "--theta-b", "70", "--a", "3", "--b", "3", "--c", "5", "--d", "1",
    ]));
    let eqs = v["quantum"]["equilibria"].as_array().unwrap();
    assert_eq!(eqs.len(), 1);
    assert!(close(&eqs[0]["alpha"], 145.44, 0.05));
    assert!(close(&eqs[0]["beta"], 59.38, 0.05));
    assert!(eqs[0]["residual"].as_f64().unwrap() < 1e-4);
}

#[test]
fn equilibrium_output_is_stable() {
    let a = qlg(&["equilibrium", "--game", "spin-one"]);
    let b = qlg(&["equilibrium", "--game", "spin-one"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bad_search_options_exit_2() {
    let out = qlg(&["equilibrium", "--coarse-step", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    assert_eq!(qlg(&["equilibrium", "--a", "-1"]).status.code(), Some(2));
}

#[test]
fn sweep_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let out = qlg(&["equilibrium", "--sweep", "--coarse-step", "5", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("alpha,beta,F"));
    assert_eq!(lines.count(), 36 * 36);
}

#[test]
fn classical_command() {
    let v = json(&qlg(&["classical"]));
    assert!(close(&v["classical"]["value"], 0.25, 1e-9));
    assert_eq!(v["classical"]["pure_saddle_exists"], Value::Bool(false));
}

#[test]
fn simulate_is_deterministic_per_seed() {
    let a = json(&qlg(&["simulate", "--rounds", "20000", "--seed", "5"]));
    let b = json(&qlg(&["simulate", "--rounds", "20000", "--seed", "5"]));
    let c = json(&qlg(&["simulate", "--rounds", "20000", "--seed", "6"]));
    assert_eq!(a, b);
    assert_ne!(a["report"]["mean_payoff"], c["report"]["mean_payoff"]);
    let mean = a["report"]["mean_payoff"].as_f64().unwrap();
    let se = a["report"]["std_error"].as_f64().unwrap();
    assert!((mean - a["born_payoff"].as_f64().unwrap()).abs() < 4.0 * se);
}

#[test]
fn seed_from_environment() {
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_qlg"))
            .args(["simulate", "--rounds", "1000"])
            .env("QLGAME_SEED", seed)
            .output()
            .unwrap()
    };
    assert_eq!(json(&run("9"))["seed"], Value::from(9));
}

#[test]
fn simulate_trace_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.csv");
    let out = qlg(&["simulate", "--rounds", "50", "--trace", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 51);
}

#[test]
fn mechanical_simulation_runs() {
    let v = json(&qlg(&["simulate", "--mode", "mechanical", "--rounds", "10000"]));
    assert_eq!(v["report"]["mode"], Value::from("mechanical"));
}

#[test]
fn interference_point_and_sweep() {
    let v = json(&qlg(&["interference", "--beta", "60", "--theta", "30"]));
    let v = &v["report"];
    assert!(close(&v["direct"], 0.25, 1e-12));
    assert!(close(&v["classical_sum"], 0.625, 1e-12));
    assert!(close(&v["interference_term"], -0.375, 1e-12));
    assert!(close(&v["lambda"], -1.0, 1e-9));

    let out = qlg(&["interference", "--sweep", "--step", "30"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("beta,theta,direct,classical_sum,interference,lambda"));
}

#[test]
fn bad_config_version_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    fs::write(&path, r#"{"schema_version": 99}"#).unwrap();
    assert_eq!(qlg(&["--config", path.to_str().unwrap(), "equilibrium"]).status.code(), Some(2));
}

#[test]
fn config_file_is_used() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    fs::write(
        &path,
        r#"{"schema_version": 1, "spin_half": {"theta_a": 10, "theta_b": 70, "a": 3, "b": 3, "c": 5, "d": 1}}"#,
    )
    .unwrap();
    let v = json(&qlg(&["--config", path.to_str().unwrap(), "equilibrium"]));
    assert_eq!(v["quantum"]["saddle_exists"], Value::Bool(true));
}

fn play(script: &str, extra: &[&str]) -> (Vec<String>, Value) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("moves.txt");
    fs::write(&path, script).unwrap();
    let mut args = vec!["play", "--script", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = qlg(&args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    let summary = serde_json::from_str(&lines.pop().unwrap()).unwrap();
    (lines, summary)
}

#[test]
fn play_eigenstate_bob_always_says_yes() {
    let (lines, summary) = play(&"1\n".repeat(200), &["--beta", "0"]);
    assert_eq!(lines.len(), 200);
    assert!(lines.iter().all(|l| l.contains("-> yes")));
    assert_eq!(summary["total"], Value::from(0.0));
}

#[test]
fn play_alternating_questions() {
    let (_, summary) = play(&"2\n4\n".repeat(5000), &["--beta", "0", "--seed", "3"]);
    assert_eq!(summary["rounds"], Value::from(10000));
    let mean = summary["mean"].as_f64().unwrap();
    let se = summary["std_error"].as_f64().unwrap();
    assert!((mean - 0.5).abs() < 3.0 * se, "mean {mean} se {se}");
}

#[test]
fn play_quit_and_bad_tokens() {
    let (lines, summary) = play("x\nquit\n1\n", &[]);
    assert_eq!(summary["rounds"], Value::from(0));
    assert!(lines[0].contains("unrecognised"));
}

#[test]
fn play_without_terminal_exits_2() {
    assert_eq!(qlg(&["play"]).status.code(), Some(2));
}
