use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use clap::ValueEnum;
use serde::Serialize;

use qwalk_core::coin::{build_coin, CoinParams};
use qwalk_core::figures::{
    bias_panels, panel_distribution, region_config, region_map, FIGURE_STEPS, REGION_RESOLUTION,
};
use qwalk_core::game::{play_program, sweep_winner_region, GameConfig, PlayerCoins};
use qwalk_core::strategy::{expand, parse};
use qwalk_core::walk::evolve_steps;
use qwalk_core::Distribution;

use crate::output::{distribution_csv, region_csv, to_json, GameReport, WalkSummary};
use crate::settings::{Format, RunConfig};
use crate::verify::{self, Model};

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

/// Write to `--output` if given, else to `out`.
fn emit(cfg: &RunConfig, out: &mut dyn Write, contents: &str) -> Result<()> {
    match &cfg.output {
        Some(path) => write_file(path, contents),
        None => out.write_all(contents.as_bytes()).context("writing to stdout"),
    }
}

fn game_config(cfg: &RunConfig, steps: usize) -> GameConfig {
    GameConfig {
        steps,
        theta: cfg.theta,
        eq_tolerance: cfg.eq_tolerance,
        min_increment: cfg.min_increment,
    }
}

pub fn walk_distribution(cfg: &RunConfig) -> Result<Distribution> {
    let steps = cfg.steps.unwrap_or(FIGURE_STEPS);
    let coin = build_coin(CoinParams::new(cfg.xi, cfg.theta, cfg.zeta))?;
    Ok(evolve_steps(steps, cfg.initial, &vec![[coin]; steps])?.distribution())
}

#[derive(Serialize)]
struct WalkJson<'a> {
    summary: &'a WalkSummary,
    distribution: Vec<(i64, f64)>,
}

/// A single-coin walk. CSV goes to the output (summary JSON next to it, or
/// on `err` when writing to stdout); JSON bundles both.
pub fn cmd_walk(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let d = walk_distribution(cfg)?;
    let summary = WalkSummary::of(&d);
    match cfg.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            emit(cfg, out, &distribution_csv(&d))?;
            match &cfg.output {
                Some(path) => write_file(&path.with_extension("summary.json"), &to_json(&summary))?,
                None => err.write_all(to_json(&summary).as_bytes())?,
            }
        }
        Format::Json => {
            let doc = WalkJson { summary: &summary, distribution: d.iter().collect() };
            emit(cfg, out, &to_json(&doc))?;
        }
    }
    Ok(())
}

pub fn game_report(cfg: &RunConfig) -> Result<GameReport> {
    let src = cfg
        .strategy
        .as_deref()
        .ok_or_else(|| anyhow!("game needs --strategy, e.g. \"(A B)^50\""))?;
    let ast = parse(src).map_err(|e| anyhow!("{e}\n{}", e.annotate(src)))?;
    let program = expand(&ast)?;
    let coins = PlayerCoins::new(cfg.xi, cfg.zeta);
    let outcome = play_program(&program, &coins, &game_config(cfg, program.len()))?;
    Ok(GameReport::new(&outcome, program.len(), src.trim().to_string()))
}

pub fn cmd_game(cfg: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let report = game_report(cfg)?;
    match cfg.format.unwrap_or(Format::Json) {
        Format::Json => emit(cfg, out, &to_json(&report)),
        Format::Csv => emit(cfg, out, &report.csv()),
    }
}

pub fn cmd_sweep(cfg: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let game = game_config(cfg, cfg.steps.unwrap_or(FIGURE_STEPS));
    let map = sweep_winner_region(cfg.order, &game, cfg.grid_resolution)?;
    match cfg.format.unwrap_or(Format::Csv) {
        Format::Csv => emit(cfg, out, &region_csv(&map)),
        Format::Json => emit(cfg, out, &to_json(&map)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FigureSet {
    /// Four solo-coin distributions at t = 100
    Fig2,
    /// Composite winner-region map
    Fig3,
    All,
}

#[derive(Debug, Serialize)]
pub struct PanelEntry {
    pub figure: &'static str,
    pub panel: &'static str,
    pub file: String,
    pub player: String,
    pub xi: f64,
    pub theta: f64,
    pub zeta: f64,
    pub steps: usize,
    pub initial_state: &'static str,
    pub caption: &'static str,
    pub summary: WalkSummary,
}

#[derive(Debug, Serialize)]
pub struct RegionEntry {
    pub figure: &'static str,
    pub file: String,
    pub order: String,
    pub theta: f64,
    pub steps: usize,
    pub resolution: usize,
    pub initial_state: &'static str,
    pub caption: &'static str,
}

#[derive(Debug, Default, Serialize)]
pub struct Manifest {
    pub panels: Vec<PanelEntry>,
    pub region: Option<RegionEntry>,
}

const INITIAL_STATE: &str = "(|0> + i|1>)/sqrt(2) at x = 0";

/// Write one file per panel plus `manifest.json` into the output directory
/// (default `figures/`). Returns the manifest path.
pub fn cmd_figure(which: FigureSet, cfg: &RunConfig) -> Result<PathBuf> {
    let dir = cfg.output.clone().unwrap_or_else(|| PathBuf::from("figures"));
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut manifest = Manifest::default();

    if matches!(which, FigureSet::Fig2 | FigureSet::All) {
        for panel in bias_panels() {
            let d = panel_distribution(&panel, FIGURE_STEPS)?;
            let file = format!("fig2_{}.csv", panel.label);
            write_file(&dir.join(&file), &distribution_csv(&d))?;
            manifest.panels.push(PanelEntry {
                figure: "fig2",
                panel: panel.label,
                file,
                player: format!("{:?}", panel.player),
                xi: panel.coin.xi,
                theta: panel.coin.theta,
                zeta: panel.coin.zeta,
                steps: FIGURE_STEPS,
                initial_state: INITIAL_STATE,
                caption: panel.caption,
                summary: WalkSummary::of(&d),
            });
        }
    }

    if matches!(which, FigureSet::Fig3 | FigureSet::All) {
        let map = region_map(REGION_RESOLUTION)?;
        let file = "fig3_region.csv".to_string();
        write_file(&dir.join(&file), &region_csv(&map))?;
        let game = region_config();
        manifest.region = Some(RegionEntry {
            figure: "fig3",
            file,
            order: format!("{:?}", map.order),
            theta: game.theta,
            steps: game.steps,
            resolution: map.resolution,
            initial_state: INITIAL_STATE,
            caption: "both coins every step, A's coin first; winner per (xi, zeta) cell",
        });
    }

    let path = dir.join("manifest.json");
    write_file(&path, &to_json(&manifest))?;
    Ok(path)
}

/// Run every acceptance check against `model`, print the table, and
/// report whether all passed.
pub fn cmd_verify(cfg: &RunConfig, model: &dyn Model, out: &mut dyn Write) -> Result<bool> {
    writeln!(out, "model: {}, seed: {}", model.name(), cfg.seed)?;
    let results = verify::run_all(model, cfg.seed);
    let (table, ok) = verify::report(&results);
    out.write_all(table.as_bytes())?;
    Ok(ok)
}
