//! Parameter sets for regenerating the published walk data: four solo-coin
//! distributions at `t = 100` and the composite winner-region map.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};

use serde::Serialize;

use crate::coin::{build_coin, CoinParams};
use crate::error::Result;
use crate::game::{sweep_winner_region, GameConfig, Order, Player, WinnerRegionMap};
use crate::walk::{evolve_steps, Distribution, InitialState};

pub const FIGURE_STEPS: usize = 100;

/// Default grid for the winner-region map.
pub const REGION_RESOLUTION: usize = 25;

/// Which side should carry more mass.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Heavier {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BiasPanel {
    pub label: &'static str,
    pub player: Player,
    pub coin: CoinParams,
    pub heavier: Heavier,
    pub caption: &'static str,
}

pub fn bias_panels() -> [BiasPanel; 4] {
    let five_pi_12 = 5.0 * std::f64::consts::PI / 12.0;
    [
        BiasPanel {
            label: "a",
            player: Player::A,
            coin: CoinParams::new(FRAC_PI_6, FRAC_PI_6, 0.0),
            heavier: Heavier::Left,
            caption: "(xi, theta, zeta) = (pi/6, pi/6, 0); P_L > P_R",
        },
        BiasPanel {
            label: "b",
            player: Player::B,
            coin: CoinParams::new(0.0, FRAC_PI_6, FRAC_PI_6),
            heavier: Heavier::Right,
            caption: "(xi, theta, zeta) = (0, pi/6, pi/6); P_R > P_L",
        },
        BiasPanel {
            label: "c",
            player: Player::A,
            coin: CoinParams::new(five_pi_12, FRAC_PI_3, 0.0),
            heavier: Heavier::Left,
            caption: "(xi, theta, zeta) = (5pi/12, pi/3, 0); P_L > P_R",
        },
        BiasPanel {
            label: "d",
            player: Player::B,
            coin: CoinParams::new(0.0, FRAC_PI_3, five_pi_12),
            heavier: Heavier::Right,
            caption: "(xi, theta, zeta) = (0, pi/3, 5pi/12); P_R > P_L",
        },
    ]
}

/// Solo walk with the panel's coin from the game's initial state.
pub fn panel_distribution(panel: &BiasPanel, steps: usize) -> Result<Distribution> {
    let coin = build_coin(panel.coin)?;
    Ok(evolve_steps(steps, InitialState::balanced(), &vec![[coin]; steps])?.distribution())
}

pub fn region_config() -> GameConfig {
    GameConfig { steps: FIGURE_STEPS, theta: FRAC_PI_4, ..Default::default() }
}

/// Winner regions for the composite step with A's coin acting first.
pub fn region_map(resolution: usize) -> Result<WinnerRegionMap> {
    sweep_winner_region(Order::BA, &region_config(), resolution)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::dense_oracle_evolve;

    #[test]
    fn panel_orderings() {
        for panel in bias_panels() {
            let sp = panel_distribution(&panel, FIGURE_STEPS).unwrap().side_probabilities();
            match panel.heavier {
                Heavier::Left => assert!(sp.p_left > sp.p_right, "panel {}", panel.label),
                Heavier::Right => assert!(sp.p_right > sp.p_left, "panel {}", panel.label),
            }
        }
    }

    #[test]
    fn paired_panels_are_mirror_images() {
        let panels = bias_panels();
        for (i, j) in [(0, 1), (2, 3)] {
            for t in 1..=10 {
                let ci = build_coin(panels[i].coin).unwrap();
                let cj = build_coin(panels[j].coin).unwrap();
                let di = dense_oracle_evolve(t, InitialState::balanced(), &vec![[ci]; t])
                    .unwrap()
                    .distribution();
                let dj = dense_oracle_evolve(t, InitialState::balanced(), &vec![[cj]; t])
                    .unwrap()
                    .distribution();
                assert!(di.p.iter().zip(&dj.mirrored().p).all(|(a, b)| (a - b).abs() <= 1e-12));
            }
            let di = panel_distribution(&panels[i], FIGURE_STEPS).unwrap();
            let dj = panel_distribution(&panels[j], FIGURE_STEPS).unwrap();
            assert!(di.p.iter().zip(&dj.mirrored().p).all(|(a, b)| (a - b).abs() <= 1e-10));
        }
    }
}
