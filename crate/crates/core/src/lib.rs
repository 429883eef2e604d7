//! Exact state-vector simulation of a discrete-time quantum walk on a line,
//! driven by the three-angle coin family
//!
//! ```text
//! B(ξ, θ, ζ) = [ e^{iξ} cos θ     e^{iζ} sin θ  ]
//!              [ e^{-iζ} sin θ   -e^{-iξ} cos θ ]
//! ```
//!
//! and a two-player game played on top of it: player A owns `B(ξ, θ, 0)`,
//! player B owns `B(0, θ, ζ)`, and the winner is read off the probability
//! mass left and right of the origin after `t` steps.
//!
//! The crate is split into
//!
//! - [`coin`]: 2×2 complex matrices, the coin family and the two closed-form
//!   composite coins,
//! - [`walk`]: the walk state, one step `S·(C_k ⋯ C_1 ⊗ 1)`, and readouts,
//! - [`oracle`]: a dense-matrix reference evolution for small `t`,
//! - [`strategy`]: the strategy language (`"(A B)^50"`, `"(AB)^100"`, ...),
//! - [`game`]: adjudication, the solo / alternating / composite regimes and
//!   winner-region sweeps,
//! - [`figures`]: the panel definitions used to regenerate figure data.

pub mod coin;
pub mod error;
pub mod figures;
pub mod game;
pub mod oracle;
pub mod strategy;
pub mod walk;

pub use coin::{CoinParams, Matrix2, C64};
pub use error::{Error, Result};
pub use game::{GameConfig, GameOutcome, Order, Player, PlayerCoins, Winner};
pub use strategy::{CoinTag, StepProgram};
pub use walk::{Distribution, InitialState, SideProbabilities, WalkState};

/// Tolerance used for every algebraic identity on coins.
pub const ALGEBRA_TOL: f64 = 1e-12;
