//! The two-player walk game.
//!
//! Player A owns the coin `B(ξ, θ, 0)`, player B owns `B(0, θ, ζ)`, both
//! share `θ`. The walk starts from `(|0⟩ + i|1⟩)/√2` at the origin; after
//! `t` steps A wins if `P_R > P_L`, B wins if `P_L > P_R`, and both win
//! jointly if the two sides balance. Mass at the origin counts for nobody.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coin::{build_coin, CoinParams};
use crate::error::{Error, Result};
use crate::strategy::{CoinSet, CoinTag, StepProgram};
use crate::walk::{evolve, InitialState, SideProbabilities};

/// Slack on the `[0, π/2]` bounds for player angles.
const RANGE_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Player {
    A,
    B,
}

impl Player {
    pub fn tag(self) -> CoinTag {
        match self {
            Player::A => CoinTag::A,
            Player::B => CoinTag::B,
        }
    }

    pub fn other(self) -> Player {
        match self {
            Player::A => Player::B,
            Player::B => Player::A,
        }
    }
}

/// Order of the two coins inside a composite step, named by operator
/// product: `BA` is `S·(B_B·B_A ⊗ 1)`, so A's coin acts first; `AB` is
/// `S·(B_A·B_B ⊗ 1)`, B's coin acts first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Order {
    AB,
    BA,
}

impl Order {
    /// The coins of one step in application order.
    pub fn application_order(self) -> [CoinTag; 2] {
        match self {
            Order::BA => [CoinTag::A, CoinTag::B],
            Order::AB => [CoinTag::B, CoinTag::A],
        }
    }

    /// The player whose coin acts first.
    pub fn starter(self) -> Player {
        match self {
            Order::BA => Player::A,
            Order::AB => Player::B,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Winner {
    A,
    B,
    Joint,
}

impl fmt::Display for Winner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Winner::A => "A",
            Winner::B => "B",
            Winner::Joint => "Joint",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GameConfig {
    pub steps: usize,
    pub theta: f64,
    /// Largest `|P_L - P_R|` still adjudicated as a joint win.
    pub eq_tolerance: f64,
    /// Smallest nonzero angle a player may pick.
    pub min_increment: f64,
}

impl Default for GameConfig {
    fn default() -> Self {
        GameConfig { steps: 100, theta: FRAC_PI_4, eq_tolerance: 1e-9, min_increment: 0.01 }
    }
}

impl GameConfig {
    pub fn with_steps(steps: usize) -> Self {
        GameConfig { steps, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps < 1 {
            return Err(Error::InvalidConfig("steps must be at least 1".into()));
        }
        if !self.theta.is_finite() {
            return Err(Error::InvalidParameter {
                name: "theta",
                value: self.theta,
                reason: "must be finite",
            });
        }
        if !(self.eq_tolerance > 0.0 && self.eq_tolerance <= 1e-6) {
            return Err(Error::InvalidConfig(format!(
                "eq_tolerance must lie in (0, 1e-6], got {}",
                self.eq_tolerance
            )));
        }
        if !(self.min_increment > 0.0 && self.min_increment < FRAC_PI_2) {
            return Err(Error::InvalidConfig(format!(
                "min_increment must lie in (0, pi/2), got {}",
                self.min_increment
            )));
        }
        Ok(())
    }
}

/// The two players' angle choices.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlayerCoins {
    pub xi_a: f64,
    pub zeta_b: f64,
}

impl PlayerCoins {
    pub fn new(xi_a: f64, zeta_b: f64) -> Self {
        PlayerCoins { xi_a, zeta_b }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [("xi", self.xi_a), ("zeta", self.zeta_b)] {
            if !(-RANGE_SLACK..=FRAC_PI_2 + RANGE_SLACK).contains(&value) {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    reason: "player angles must lie in [0, pi/2]",
                });
            }
        }
        Ok(())
    }

    pub fn coin_set(&self, theta: f64) -> Result<CoinSet> {
        Ok(CoinSet {
            a: build_coin(CoinParams::player_a(self.xi_a, theta))?,
            b: build_coin(CoinParams::player_b(self.zeta_b, theta))?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GameOutcome {
    pub p_left: f64,
    pub p_right: f64,
    pub p_origin: f64,
    pub winner: Winner,
}

impl GameOutcome {
    /// `P_R - P_L`: positive favours A, negative favours B.
    pub fn margin(&self) -> f64 {
        self.p_right - self.p_left
    }
}

pub fn decide_winner(sp: SideProbabilities, cfg: &GameConfig) -> GameOutcome {
    let margin = sp.p_right - sp.p_left;
    let winner = if margin > cfg.eq_tolerance {
        Winner::A
    } else if -margin > cfg.eq_tolerance {
        Winner::B
    } else {
        Winner::Joint
    };
    GameOutcome { p_left: sp.p_left, p_right: sp.p_right, p_origin: sp.p_origin, winner }
}

/// Play an arbitrary program from the game's initial state and adjudicate
/// after the program's last step. `cfg.steps` is ignored.
pub fn play_program(
    program: &StepProgram,
    coins: &PlayerCoins,
    cfg: &GameConfig,
) -> Result<GameOutcome> {
    GameConfig { steps: program.len().max(1), ..*cfg }.validate()?;
    coins.validate()?;
    let set = coins.coin_set(cfg.theta)?;
    let state = evolve(program.len(), InitialState::balanced(), program, &set)?;
    Ok(decide_winner(state.distribution().side_probabilities(), cfg))
}

/// Every step uses `player`'s coin only.
pub fn solo_program(player: Player, steps: usize) -> Result<StepProgram> {
    StepProgram::repeat(&[player.tag()], steps)
}

/// `first`'s coin on steps 1, 3, 5, ..., the other player's on 2, 4, ...
pub fn alternating_program(first: Player, steps: usize) -> Result<StepProgram> {
    StepProgram::cycle(&[first.tag(), first.other().tag()], steps)
}

/// Both coins on every step, in `order`.
pub fn composite_program(order: Order, steps: usize) -> Result<StepProgram> {
    StepProgram::repeat(&order.application_order(), steps)
}

pub fn play_solo(player: Player, coins: &PlayerCoins, cfg: &GameConfig) -> Result<GameOutcome> {
    cfg.validate()?;
    play_program(&solo_program(player, cfg.steps)?, coins, cfg)
}

pub fn play_alternating(
    first: Player,
    coins: &PlayerCoins,
    cfg: &GameConfig,
) -> Result<GameOutcome> {
    cfg.validate()?;
    play_program(&alternating_program(first, cfg.steps)?, coins, cfg)
}

pub fn play_composite(order: Order, coins: &PlayerCoins, cfg: &GameConfig) -> Result<GameOutcome> {
    cfg.validate()?;
    play_program(&composite_program(order, cfg.steps)?, coins, cfg)
}

/// `|P_L - P_R|` after a solo walk with the given angle for `player`.
pub fn asymmetry_margin(player: Player, angle: f64, cfg: &GameConfig) -> Result<f64> {
    if !(angle > 0.0 && angle <= FRAC_PI_2) {
        return Err(Error::InvalidParameter {
            name: "angle",
            value: angle,
            reason: "must lie in (0, pi/2]",
        });
    }
    let coins = match player {
        Player::A => PlayerCoins::new(angle, 0.0),
        Player::B => PlayerCoins::new(0.0, angle),
    };
    Ok(play_solo(player, &coins, cfg)?.margin().abs())
}

/// The angle to pick when players cannot consult: the smallest one allowed.
pub fn epsilon_strategy(cfg: &GameConfig) -> Result<f64> {
    cfg.validate()?;
    Ok(cfg.min_increment)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionCell {
    pub xi: f64,
    pub zeta: f64,
    /// `P_R - P_L`.
    pub margin: f64,
    pub winner: Winner,
}

/// Composite-game outcomes on a uniform `(ξ, ζ)` grid over `[0, π/2]²`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WinnerRegionMap {
    pub order: Order,
    pub theta: f64,
    pub steps: usize,
    pub resolution: usize,
    /// Row-major in `ξ`: cell `(i, j)` is at `i * resolution + j`.
    pub cells: Vec<RegionCell>,
}

impl WinnerRegionMap {
    pub fn cell(&self, xi_index: usize, zeta_index: usize) -> &RegionCell {
        &self.cells[xi_index * self.resolution + zeta_index]
    }
}

/// `i`-th of `resolution` equally spaced angles from 0 to π/2.
pub fn grid_angle(i: usize, resolution: usize) -> f64 {
    FRAC_PI_2 * i as f64 / (resolution - 1) as f64
}

/// Evaluate the composite game on every grid cell. Cells are computed in
/// parallel on the current rayon pool; the output order is fixed.
pub fn sweep_winner_region(
    order: Order,
    cfg: &GameConfig,
    resolution: usize,
) -> Result<WinnerRegionMap> {
    if resolution < 2 {
        return Err(Error::InvalidConfig("grid resolution must be at least 2".into()));
    }
    cfg.validate()?;
    let program = composite_program(order, cfg.steps)?;
    let cells = (0..resolution * resolution)
        .into_par_iter()
        .map(|k| {
            let xi = grid_angle(k / resolution, resolution);
            let zeta = grid_angle(k % resolution, resolution);
            let out = play_program(&program, &PlayerCoins::new(xi, zeta), cfg)?;
            Ok(RegionCell { xi, zeta, margin: out.margin(), winner: out.winner })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WinnerRegionMap { order, theta: cfg.theta, steps: cfg.steps, resolution, cells })
}
