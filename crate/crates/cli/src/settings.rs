//! Run configuration: flags, an optional JSON config file mirroring them,
//! and the resolved values a command runs with. Flags win over the file.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use serde::Deserialize;

use qwalk_core::game::Order;
use qwalk_core::InitialState;

use crate::angle::Angle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
pub enum OrderArg {
    /// Both coins per step, B's coin first (`S·(B_A·B_B ⊗ 1)`).
    #[value(name = "AB")]
    AB,
    /// Both coins per step, A's coin first (`S·(B_B·B_A ⊗ 1)`).
    #[value(name = "BA")]
    BA,
}

impl From<OrderArg> for Order {
    fn from(o: OrderArg) -> Order {
        match o {
            OrderArg::AB => Order::AB,
            OrderArg::BA => Order::BA,
        }
    }
}

/// Every tunable, all optional so a file and flags can be layered.
#[derive(Clone, Debug, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    /// Number of walk steps
    #[arg(long)]
    pub steps: Option<usize>,
    /// Shared coin angle theta (e.g. pi/4)
    #[arg(long)]
    pub theta: Option<Angle>,
    /// Player A's angle xi
    #[arg(long)]
    pub xi: Option<Angle>,
    /// Player B's angle zeta
    #[arg(long)]
    pub zeta: Option<Angle>,
    /// Strategy program, e.g. "(A B)^50" or "(AB)^100"
    #[arg(long)]
    pub strategy: Option<String>,
    /// Coin order inside a composite step
    #[arg(long, value_enum)]
    pub order: Option<OrderArg>,
    /// Initial coin state polar angle delta
    #[arg(long)]
    pub delta: Option<Angle>,
    /// Initial coin state relative phase phi
    #[arg(long)]
    pub phi: Option<Angle>,
    /// Output file (or directory for `figure`)
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Grid points per axis for sweeps
    #[arg(long)]
    pub grid_resolution: Option<usize>,
    /// Largest |P_L - P_R| adjudicated as a joint win
    #[arg(long)]
    pub eq_tolerance: Option<f64>,
    /// Smallest nonzero angle a player may choose
    #[arg(long)]
    pub min_increment: Option<f64>,
    /// Seed for randomized checks
    #[arg(long)]
    pub seed: Option<u64>,
}

macro_rules! layer {
    ($over:expr, $base:expr, $($field:ident),*) => {
        Settings { $($field: $over.$field.or($base.$field)),* }
    };
}

impl Settings {
    pub fn from_file(path: &Path) -> Result<Settings> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    /// `self` on top of `base`.
    pub fn over(self, base: Settings) -> Settings {
        layer!(
            self, base, steps, theta, xi, zeta, strategy, order, delta, phi, output, format,
            grid_resolution, eq_tolerance, min_increment, seed
        )
    }

    pub fn resolve(self) -> Result<RunConfig> {
        let angle = |a: Option<Angle>, default: f64| a.map_or(default, |a| a.0);
        let cfg = RunConfig {
            steps: self.steps,
            theta: angle(self.theta, FRAC_PI_4),
            xi: angle(self.xi, 0.0),
            zeta: angle(self.zeta, 0.0),
            strategy: self.strategy,
            order: self.order.map_or(Order::BA, Order::from),
            initial: InitialState::new(angle(self.delta, FRAC_PI_2), angle(self.phi, FRAC_PI_2)),
            output: self.output,
            format: self.format,
            grid_resolution: self.grid_resolution.unwrap_or(25),
            eq_tolerance: self.eq_tolerance.unwrap_or(1e-9),
            min_increment: self.min_increment.unwrap_or(0.01),
            seed: self.seed.unwrap_or(DEFAULT_SEED),
        };
        if cfg.grid_resolution < 2 {
            bail!("grid resolution must be at least 2, got {}", cfg.grid_resolution);
        }
        Ok(cfg)
    }
}

pub const DEFAULT_SEED: u64 = 0x5eed;

/// Fully resolved run parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    /// `None` means the command's own default.
    pub steps: Option<usize>,
    pub theta: f64,
    pub xi: f64,
    pub zeta: f64,
    pub strategy: Option<String>,
    pub order: Order,
    pub initial: InitialState,
    pub output: Option<PathBuf>,
    /// `None` means the command's own default.
    pub format: Option<Format>,
    pub grid_resolution: usize,
    pub eq_tolerance: f64,
    pub min_increment: f64,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Settings::default().resolve().expect("defaults are valid")
    }
}
