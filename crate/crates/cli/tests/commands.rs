use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};
use std::fs;
use std::process::Command;

use qwalk_cli::commands::{cmd_game, cmd_sweep, cmd_verify, cmd_walk, game_report};
use qwalk_cli::settings::{Format, RunConfig};
use qwalk_cli::verify::{run_criterion, Exact, Mutant};
use qwalk_core::game::Order;

fn walk(cfg: &RunConfig) -> (String, serde_json::Value) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    cmd_walk(cfg, &mut out, &mut err).unwrap();
    (String::from_utf8(out).unwrap(), serde_json::from_slice(&err).unwrap())
}

fn walk_cfg(steps: usize, xi: f64, zeta: f64) -> RunConfig {
    RunConfig { steps: Some(steps), theta: FRAC_PI_4, xi, zeta, ..Default::default() }
}

#[test]
fn walk_emits_a_normalised_biased_distribution() {
    let (csv, summary) = walk(&walk_cfg(100, FRAC_PI_6, 0.0));
    assert!(csv.starts_with("x,p\n"));
    let total: f64 = csv.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse::<f64>().unwrap()).sum();
    assert!((total - 1.0).abs() <= 1e-10);
    assert_eq!(csv.lines().count(), 202);
    assert!(summary["P_L"].as_f64().unwrap() > summary["P_R"].as_f64().unwrap());
    assert_eq!(summary["t"], 100);
}

#[test]
fn walk_with_no_steps() {
    let (csv, _) = walk(&walk_cfg(0, FRAC_PI_6, 0.0));
    assert_eq!(csv, "x,p\n0,1.0\n");
}

#[test]
fn unbiased_walk_summary_is_balanced() {
    let (_, summary) = walk(&walk_cfg(100, 0.0, 0.0));
    let gap = summary["P_L"].as_f64().unwrap() - summary["P_R"].as_f64().unwrap();
    assert!(gap.abs() <= 1e-10);
}

#[test]
fn walk_writes_files_and_json_bundle() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("walk.csv");
    let cfg = RunConfig { output: Some(path.clone()), ..walk_cfg(10, 0.2, 0.0) };
    let (mut out, mut err) = (Vec::new(), Vec::new());
    cmd_walk(&cfg, &mut out, &mut err).unwrap();
    assert!(out.is_empty() && err.is_empty());
    assert!(fs::read_to_string(&path).unwrap().starts_with("x,p\n"));
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("walk.summary.json")).unwrap())
            .unwrap();
    assert_eq!(summary["t"], 10);

    let cfg = RunConfig { format: Some(Format::Json), ..walk_cfg(2, 0.0, 0.0) };
    let mut out = Vec::new();
    cmd_walk(&cfg, &mut out, &mut Vec::new()).unwrap();
    let doc: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(doc["distribution"].as_array().unwrap().len(), 5);
}

#[test]
fn unwritable_output_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = RunConfig { output: Some(dir.path().join("missing/dir/out.csv")), ..walk_cfg(3, 0.0, 0.0) };
    assert!(cmd_walk(&cfg, &mut Vec::new(), &mut Vec::new()).is_err());
}

fn game(strategy: &str, xi: f64, zeta: f64) -> serde_json::Value {
    let cfg = RunConfig { strategy: Some(strategy.into()), xi, zeta, ..Default::default() };
    let mut out = Vec::new();
    cmd_game(&cfg, &mut out).unwrap();
    serde_json::from_slice(&out).unwrap()
}

#[test]
fn game_reports() {
    let r = game("(AB)^100", FRAC_PI_2, FRAC_PI_3);
    assert_eq!(r["winner"], "Joint");
    assert_eq!(r["steps"], 100);
    assert_eq!(r["strategy"], "(AB)^100");

    let r = game("(A)^100", FRAC_PI_6, 0.0);
    assert_eq!(r["winner"], "B");
    assert!(r["margin"].as_f64().unwrap() < 0.0);

    // alternation does not cancel the starter's first-step bias
    let r = game("(A B)^50", FRAC_PI_6, FRAC_PI_6);
    assert_eq!(r["winner"], "B");
    assert!((r["margin"].as_f64().unwrap() + 0.205_324_302_774_917).abs() <= 1e-10);
}

#[test]
fn game_errors() {
    let err = game_report(&RunConfig { strategy: Some("(A B)^0".into()), ..Default::default() })
        .unwrap_err()
        .to_string();
    assert!(err.contains("position 6"), "{err}");
    assert!(err.contains("      ^"), "{err}");
    assert!(game_report(&RunConfig::default()).is_err());
    let out_of_range = RunConfig { strategy: Some("A".into()), xi: 2.0, ..Default::default() };
    assert!(game_report(&out_of_range).is_err());
}

#[test]
fn sweep_csv_structure() {
    let cfg = RunConfig { grid_resolution: 5, order: Order::BA, ..Default::default() };
    let mut out = Vec::new();
    cmd_sweep(&cfg, &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("xi,zeta,margin,winner"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 25);
    for (k, row) in rows.iter().enumerate() {
        let (i, j) = (k / 5, k % 5);
        let want = if i == 4 || i == j { "Joint" } else if j > i { "B" } else { "A" };
        assert_eq!(row[3], want, "cell ({i}, {j})");
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    let cfg = RunConfig { grid_resolution: 9, steps: Some(40), ..Default::default() };
    let run = || {
        let mut out = Vec::new();
        cmd_sweep(&cfg, &mut out).unwrap();
        out
    };
    assert_eq!(run(), run());
    let (a, _) = walk(&walk_cfg(50, 0.3, 0.1));
    let (b, _) = walk(&walk_cfg(50, 0.3, 0.1));
    assert_eq!(a, b);
}

#[test]
fn mutants_are_caught() {
    for id in [1, 4, 8] {
        assert!(!run_criterion(id, &Mutant::ReversedShift, 1).passed, "criterion {id}");
    }
    // a reversed shift mirrors everything, so symmetric walks stay symmetric
    assert!(run_criterion(2, &Mutant::ReversedShift, 1).passed);
    for id in [7, 10] {
        assert!(!run_criterion(id, &Mutant::TamperedComposite, 1).passed, "criterion {id}");
    }
}

#[test]
fn verify_table_lists_every_criterion() {
    let mut out = Vec::new();
    let all_passed = cmd_verify(&RunConfig::default(), &Exact, &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]") || l.starts_with("[FAIL]")).count(), 10);
    assert_eq!(all_passed, !text.contains("[FAIL]"));
}

fn qwalk(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_qwalk")).args(args).output().unwrap()
}

#[test]
fn binary_walk_and_game() {
    let out = qwalk(&["walk", "--steps", "100", "--theta", "pi/4", "--xi", "pi/6", "--zeta", "0"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("x,p\n"));

    let out = qwalk(&["game", "--strategy", "(AB)^100", "--xi", "pi/2", "--zeta", "pi/3"]);
    assert!(out.status.success());
    let r: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["winner"], "Joint");

    let out = qwalk(&["game", "--strategy", "(A B"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 0"));

    let out = qwalk(&["walk", "--theta", "pi/"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 3"));
}

#[test]
fn binary_config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.json");
    fs::write(&config, r#"{"strategy": "(A)^100", "xi": "pi/6", "format": "csv"}"#).unwrap();
    let c = config.to_str().unwrap();
    let out = qwalk(&["--config", c, "game"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("P_L,P_R,P_origin,winner,margin,steps,strategy\n"));
    assert!(text.contains(",B,"));
    let out = qwalk(&["--config", c, "game", "--xi", "0"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains(",Joint,"));
}

#[test]
fn binary_sweep_respects_thread_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_qwalk"))
        .args(["sweep", "--grid-resolution", "3", "--steps", "10"])
        .env("QWALK_THREADS", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 10);
}
