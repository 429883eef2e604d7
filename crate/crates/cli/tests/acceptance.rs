//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (run with `-- --nocapture` to see them all).

use std::fs;

use qwalk_cli::commands::{cmd_figure, FigureSet};
use qwalk_cli::settings::{RunConfig, DEFAULT_SEED};
use qwalk_cli::verify::{run_criterion, Exact};

fn criterion(id: u8) {
    let r = run_criterion(id, &Exact, DEFAULT_SEED);
    println!("{}", r.line());
    assert!(r.passed, "{}", r.line());
}

#[test]
fn criterion_01_first_step_closed_form() {
    criterion(1);
}

#[test]
fn criterion_02_mirror_symmetry() {
    criterion(2);
}

#[test]
fn criterion_03_variance_scaling() {
    criterion(3);
}

#[test]
fn criterion_04_solo_futility() {
    criterion(4);
}

#[test]
fn criterion_05_alternating_strategy() {
    criterion(5);
}

#[test]
fn criterion_06_composite_guarantee() {
    criterion(6);
}

#[test]
fn criterion_07_composite_algebra() {
    criterion(7);
}

#[test]
fn criterion_08_dense_oracle_equivalence() {
    criterion(8);
}

fn read_csv(path: &std::path::Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn criterion_09_figure_reproduction() {
    criterion(9);

    // and the same claims read back from the emitted files
    let dir = tempfile::tempdir().unwrap();
    let cfg = RunConfig { output: Some(dir.path().to_path_buf()), ..Default::default() };
    cmd_figure(FigureSet::All, &cfg).unwrap();

    let mut sides = Vec::new();
    for label in ["a", "b", "c", "d"] {
        let rows = read_csv(&dir.path().join(format!("fig2_{label}.csv")));
        assert_eq!(rows.len(), 201);
        let (mut left, mut right) = (0.0, 0.0);
        for row in rows {
            let x: i64 = row[0].parse().unwrap();
            let p: f64 = row[1].parse().unwrap();
            if x < 0 {
                left += p;
            } else if x > 0 {
                right += p;
            }
        }
        sides.push((left, right));
    }
    assert!(sides[0].0 > sides[0].1, "panel a");
    assert!(sides[1].1 > sides[1].0, "panel b");
    assert!(sides[2].0 > sides[2].1, "panel c");
    assert!(sides[3].1 > sides[3].0, "panel d");

    let cells = read_csv(&dir.path().join("fig3_region.csv"));
    assert_eq!(cells.len(), 25 * 25);
    for (k, row) in cells.iter().enumerate() {
        let (i, j) = (k / 25, k % 25);
        let expected = if i == 24 || i == j {
            "Joint"
        } else if j > i {
            "B"
        } else {
            "A"
        };
        assert_eq!(row[3], expected, "cell ({i}, {j})");
    }

    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["panels"].as_array().unwrap().len(), 4);
    assert_eq!(manifest["region"]["order"], "BA");
    println!("[PASS] criterion  9 emitted files: orderings and region map confirmed");
}

#[test]
fn criterion_10_strategy_language() {
    criterion(10);
}
