//! Dense reference evolution.
//!
//! Every step is materialised as an explicit `2(2t+1) × 2(2t+1)` unitary,
//! `S · (C_k ⋯ C_1 ⊗ 1)`, built from matrix products of the individual
//! factors, and applied by a dense matrix–vector product. This shares no
//! code with the structured engine in [`crate::walk`] beyond the 2×2 coin
//! entries, so the two can be checked against each other.

use nalgebra::{DMatrix, DVector};

use crate::coin::{Matrix2, C64};
use crate::error::{Error, Result};
use crate::walk::{InitialState, WalkState};

/// Largest `t` the oracle accepts.
pub const ORACLE_MAX_STEPS: usize = 12;

/// Basis index of `|c⟩ ⊗ |x⟩` on a line of `2t+1` sites.
fn basis(c: usize, x: i64, t: usize) -> usize {
    c * (2 * t + 1) + (x + t as i64) as usize
}

fn coin_on_joint_space(coin: &Matrix2, t: usize) -> DMatrix<C64> {
    let sites = 2 * t + 1;
    let n = 2 * sites;
    let entries = [[coin.m00, coin.m01], [coin.m10, coin.m11]];
    DMatrix::from_fn(n, n, |row, col| {
        if row % sites == col % sites {
            entries[row / sites][col / sites]
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Conditional shift as a permutation matrix. The line is closed into a
/// ring so the matrix is unitary; a `t`-step walk never reaches the seam.
fn shift_on_joint_space(t: usize) -> DMatrix<C64> {
    let sites = (2 * t + 1) as i64;
    let n = 2 * sites as usize;
    let mut s = DMatrix::zeros(n, n);
    let wrap = |x: i64| (x + t as i64).rem_euclid(sites) - t as i64;
    for x in -(t as i64)..=t as i64 {
        s[(basis(0, wrap(x - 1), t), basis(0, x, t))] = C64::new(1.0, 0.0);
        s[(basis(1, wrap(x + 1), t), basis(1, x, t))] = C64::new(1.0, 0.0);
    }
    s
}

/// Evolve `program` (coins per step) for `program.len()` steps on a line
/// sized for `t` steps, using dense joint-space unitaries.
pub fn dense_oracle_evolve<S: AsRef<[Matrix2]>>(
    t: usize,
    init: InitialState,
    program: &[S],
) -> Result<WalkState> {
    if t > ORACLE_MAX_STEPS {
        return Err(Error::OracleScale { steps: t, limit: ORACLE_MAX_STEPS });
    }
    if program.len() > t {
        return Err(Error::CapacityExceeded { capacity: t });
    }
    let (a0, a1) = init.amplitudes()?;
    let n = 2 * (2 * t + 1);
    let mut psi = DVector::<C64>::zeros(n);
    psi[basis(0, 0, t)] = a0;
    psi[basis(1, 0, t)] = a1;

    let shift = shift_on_joint_space(t);
    for coins in program {
        let coins = coins.as_ref();
        if coins.is_empty() {
            return Err(Error::EmptyStep);
        }
        let mut step = DMatrix::<C64>::identity(n, n);
        for c in coins {
            step = coin_on_joint_space(c, t) * step;
        }
        step = &shift * step;
        psi = step * psi;
    }

    let sites = 2 * t + 1;
    let up = psi.rows(0, sites).iter().copied().collect();
    let down = psi.rows(sites, sites).iter().copied().collect();
    Ok(WalkState::from_amplitudes(t, program.len(), up, down))
}
