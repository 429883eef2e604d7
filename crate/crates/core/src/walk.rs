//! Walker state on the line and its evolution.
//!
//! The state is stored as two amplitude arrays (coin `|0⟩` and coin `|1⟩`)
//! over positions `-t_max..=t_max`, allocated once. One step applies each
//! coin of the step to the coin register, in order, and then a single
//! conditional shift: `|0⟩` moves one site left, `|1⟩` one site right.
//! The line is never truncated; capacity is checked up front.

use serde::{Deserialize, Serialize};

use crate::coin::{check_finite, Matrix2, C64};
use crate::error::{Error, Result};
use crate::strategy::{CoinSet, StepProgram};
use crate::ALGEBRA_TOL;

const ZERO: C64 = C64::new(0.0, 0.0);

/// `cos(δ/2)|0⟩ + sin(δ/2)e^{iφ}|1⟩` placed at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InitialState {
    pub delta: f64,
    pub phi: f64,
}

impl InitialState {
    pub const fn new(delta: f64, phi: f64) -> Self {
        InitialState { delta, phi }
    }

    /// `(|0⟩ + i|1⟩)/√2`, the state every game is played on.
    pub const fn balanced() -> Self {
        InitialState::new(std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2)
    }

    pub fn amplitudes(&self) -> Result<(C64, C64)> {
        check_finite("delta", self.delta)?;
        check_finite("phi", self.phi)?;
        let (s, c) = (self.delta / 2.0).sin_cos();
        Ok((C64::new(c, 0.0), C64::from_polar(s, self.phi)))
    }
}

impl Default for InitialState {
    fn default() -> Self {
        InitialState::balanced()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WalkState {
    capacity: usize,
    steps_done: usize,
    up: Vec<C64>,
    down: Vec<C64>,
}

impl WalkState {
    /// Walker at the origin with room for `capacity` steps.
    pub fn new(capacity: usize, init: InitialState) -> Result<Self> {
        let (a0, a1) = init.amplitudes()?;
        let n = 2 * capacity + 1;
        let mut up = vec![ZERO; n];
        let mut down = vec![ZERO; n];
        up[capacity] = a0;
        down[capacity] = a1;
        Ok(WalkState { capacity, steps_done: 0, up, down })
    }

    pub(crate) fn from_amplitudes(
        capacity: usize,
        steps_done: usize,
        up: Vec<C64>,
        down: Vec<C64>,
    ) -> Self {
        debug_assert_eq!(up.len(), 2 * capacity + 1);
        debug_assert_eq!(down.len(), 2 * capacity + 1);
        WalkState { capacity, steps_done, up, down }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn steps_done(&self) -> usize {
        self.steps_done
    }

    fn index(&self, x: i64) -> Option<usize> {
        let i = x + self.capacity as i64;
        (0..self.up.len() as i64).contains(&i).then_some(i as usize)
    }

    /// Amplitude of coin state `coin` (0 or 1) at position `x`; zero outside
    /// the allocated line.
    pub fn amplitude(&self, coin: usize, x: i64) -> C64 {
        let reg = match coin {
            0 => &self.up,
            1 => &self.down,
            _ => return ZERO,
        };
        self.index(x).map_or(ZERO, |i| reg[i])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.up.iter().chain(self.down.iter()).map(|a| a.norm_sqr()).sum()
    }

    /// One step: every coin in `coins` acts on the coin register in order,
    /// then the conditional shift is applied once.
    pub fn apply_step(&mut self, coins: &[Matrix2]) -> Result<()> {
        if self.steps_done >= self.capacity {
            return Err(Error::CapacityExceeded { capacity: self.capacity });
        }
        if coins.is_empty() {
            return Err(Error::EmptyStep);
        }
        for c in coins {
            let deviation = c.unitarity_deviation();
            if deviation.is_nan() || deviation > ALGEBRA_TOL {
                return Err(Error::InvalidCoin { deviation });
            }
        }

        let lo = self.capacity - self.steps_done;
        let hi = self.capacity + self.steps_done;
        for i in lo..=hi {
            let (mut a0, mut a1) = (self.up[i], self.down[i]);
            for c in coins {
                (a0, a1) = c.apply(a0, a1);
            }
            self.up[i] = a0;
            self.down[i] = a1;
        }

        // lo >= 1 and hi + 1 < len because steps_done < capacity
        self.up.copy_within(lo..=hi, lo - 1);
        self.up[hi] = ZERO;
        self.down.copy_within(lo..=hi, lo + 1);
        self.down[lo] = ZERO;

        self.steps_done += 1;
        Ok(())
    }

    /// Position distribution `P(x) = |a₀(x)|² + |a₁(x)|²` over
    /// `x ∈ [-t, t]`, `t` being the number of steps taken.
    pub fn distribution(&self) -> Distribution {
        let t = self.steps_done;
        let lo = self.capacity - t;
        let hi = self.capacity + t;
        let p = (lo..=hi)
            .map(|i| self.up[i].norm_sqr() + self.down[i].norm_sqr())
            .collect();
        Distribution { t, p }
    }

    /// The state reflected through the origin, coin labels unchanged. This is
    /// exactly the walk obtained with the shift directions swapped.
    pub fn reflected(&self) -> WalkState {
        let mut up = self.up.clone();
        let mut down = self.down.clone();
        up.reverse();
        down.reverse();
        WalkState { capacity: self.capacity, steps_done: self.steps_done, up, down }
    }

    /// Largest amplitude modulus found where support or parity say there
    /// should be none.
    pub fn stray_amplitude(&self) -> f64 {
        let t = self.steps_done as i64;
        let cap = self.capacity as i64;
        (-cap..=cap)
            .filter(|x| x.abs() > t || (x - t).rem_euclid(2) != 0)
            .map(|x| self.amplitude(0, x).norm().max(self.amplitude(1, x).norm()))
            .fold(0.0, f64::max)
    }
}

/// Run `steps` (each a list of coins applied before one shift) from `init`.
pub fn evolve_steps<S: AsRef<[Matrix2]>>(
    capacity: usize,
    init: InitialState,
    steps: &[S],
) -> Result<WalkState> {
    if steps.len() > capacity {
        return Err(Error::CapacityExceeded { capacity });
    }
    let mut state = WalkState::new(capacity, init)?;
    for coins in steps {
        state.apply_step(coins.as_ref())?;
    }
    Ok(state)
}

/// Run a tagged program, resolving each tag through `coins`.
pub fn evolve(
    capacity: usize,
    init: InitialState,
    program: &StepProgram,
    coins: &CoinSet,
) -> Result<WalkState> {
    evolve_steps(capacity, init, &program.realize(coins))
}

/// Position probabilities after `t` steps, indexed by `x + t`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Distribution {
    pub t: usize,
    pub p: Vec<f64>,
}

impl Distribution {
    pub fn prob(&self, x: i64) -> f64 {
        let i = x + self.t as i64;
        if (0..self.p.len() as i64).contains(&i) {
            self.p[i as usize]
        } else {
            0.0
        }
    }

    /// `(x, P(x))` pairs from `-t` to `t`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let t = self.t as i64;
        self.p.iter().enumerate().map(move |(i, &p)| (i as i64 - t, p))
    }

    pub fn total(&self) -> f64 {
        self.p.iter().sum()
    }

    /// The distribution reflected through the origin.
    pub fn mirrored(&self) -> Distribution {
        let mut p = self.p.clone();
        p.reverse();
        Distribution { t: self.t, p }
    }

    /// Largest `|P(x) - P(-x)|`.
    pub fn asymmetry(&self) -> f64 {
        self.p
            .iter()
            .zip(self.p.iter().rev())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn side_probabilities(&self) -> SideProbabilities {
        let t = self.t;
        SideProbabilities {
            p_left: self.p[..t].iter().sum(),
            p_right: self.p[t + 1..].iter().sum(),
            p_origin: self.p[t],
        }
    }

    /// Mean and variance of the position.
    pub fn moments(&self) -> (f64, f64) {
        let (mean, second) = self.iter().fold((0.0, 0.0), |(m, s), (x, p)| {
            let x = x as f64;
            (m + x * p, s + x * x * p)
        });
        (mean, second - mean * mean)
    }
}

/// Mass strictly left of, strictly right of, and at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SideProbabilities {
    pub p_left: f64,
    pub p_right: f64,
    pub p_origin: f64,
}

impl SideProbabilities {
    /// `P_R - P_L`.
    pub fn margin(&self) -> f64 {
        self.p_right - self.p_left
    }
}
