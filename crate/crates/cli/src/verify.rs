//! Acceptance checks, run by `qwalk verify` and by the acceptance test
//! target.
//!
//! Every check goes through a [`Model`], so the same checks can be pointed
//! at deliberately broken variants ([`Mutant`]) to show they catch the
//! breakage. Tolerances are fixed here, not configurable.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};

use anyhow::{anyhow, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use qwalk_core::coin::{build_coin, composite_ab, composite_ba, CoinParams, Matrix2, C64};
use qwalk_core::figures::{bias_panels, Heavier, FIGURE_STEPS, REGION_RESOLUTION};
use qwalk_core::game::{
    alternating_program, composite_program, decide_winner, grid_angle, GameConfig,
    Order, Player, PlayerCoins, Winner,
};
use qwalk_core::oracle::dense_oracle_evolve;
use qwalk_core::strategy::{compile, parse, render, CoinTag, StepProgram};
use qwalk_core::walk::{evolve_steps, SideProbabilities};
use qwalk_core::{InitialState, WalkState};

pub const ALGEBRA_TOL: f64 = 1e-12;
pub const SYMMETRY_TOL: f64 = 1e-10;
pub const VARIANCE_REL_TOL: f64 = 0.05;
pub const NARROW_LOSS_BOUND: f64 = 0.1;

/// What the checks evaluate: composite coins and walks.
pub trait Model: Sync {
    fn name(&self) -> &str;
    fn composite_ba(&self, xi: f64, theta: f64, zeta: f64) -> Matrix2;
    fn composite_ab(&self, xi: f64, theta: f64, zeta: f64) -> Matrix2;
    fn walk(&self, init: InitialState, steps: &[Vec<Matrix2>]) -> Result<WalkState>;
}

/// The library as shipped.
pub struct Exact;

impl Model for Exact {
    fn name(&self) -> &str {
        "exact"
    }

    fn composite_ba(&self, xi: f64, theta: f64, zeta: f64) -> Matrix2 {
        composite_ba(xi, theta, zeta).expect("finite angles")
    }

    fn composite_ab(&self, xi: f64, theta: f64, zeta: f64) -> Matrix2 {
        composite_ab(xi, theta, zeta).expect("finite angles")
    }

    fn walk(&self, init: InitialState, steps: &[Vec<Matrix2>]) -> Result<WalkState> {
        Ok(evolve_steps(steps.len(), init, steps)?)
    }
}

/// Broken variants for checking the checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutant {
    /// `|0⟩` moves right and `|1⟩` left.
    ReversedShift,
    /// Off-diagonals of the A-first composite swapped, and the B-first
    /// composite's lower-right entry taken with the wrong phase sign.
    TamperedComposite,
}

impl Model for Mutant {
    fn name(&self) -> &str {
        match self {
            Mutant::ReversedShift => "reversed-shift",
            Mutant::TamperedComposite => "tampered-composite",
        }
    }

    fn composite_ba(&self, xi: f64, theta: f64, zeta: f64) -> Matrix2 {
        let m = Exact.composite_ba(xi, theta, zeta);
        match self {
            Mutant::TamperedComposite => Matrix2 { m01: m.m10, m10: m.m01, ..m },
            _ => m,
        }
    }

    fn composite_ab(&self, xi: f64, theta: f64, zeta: f64) -> Matrix2 {
        let m = Exact.composite_ab(xi, theta, zeta);
        match self {
            Mutant::TamperedComposite => {
                let (s, c) = theta.sin_cos();
                let m11 = C64::from_polar(s * s, -zeta) + C64::from_polar(c * c, -xi);
                Matrix2 { m11, ..m }
            }
            _ => m,
        }
    }

    fn walk(&self, init: InitialState, steps: &[Vec<Matrix2>]) -> Result<WalkState> {
        let state = Exact.walk(init, steps)?;
        Ok(match self {
            Mutant::ReversedShift => state.reflected(),
            _ => state,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {:>2} {:<28} {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail
        )
    }
}

type Check = fn(&dyn Model, u64) -> Result<(bool, String)>;

pub const CRITERIA: [(u8, &str, Check); 10] = [
    (1, "first-step closed form", first_step_closed_form),
    (2, "mirror symmetry", mirror_symmetry),
    (3, "variance scaling", variance_scaling),
    (4, "solo futility", solo_futility),
    (5, "alternating strategy", alternating_strategy),
    (6, "composite guarantee", composite_guarantee),
    (7, "composite algebra", composite_algebra),
    (8, "dense oracle equivalence", oracle_equivalence),
    (9, "figure reproduction", figure_reproduction),
    (10, "strategy language", strategy_language),
];

pub fn run_criterion(id: u8, model: &dyn Model, seed: u64) -> CheckResult {
    let (_, name, check) = CRITERIA.iter().find(|c| c.0 == id).expect("criterion id 1..=10");
    let (passed, detail) = match check(model, seed) {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e:#}")),
    };
    CheckResult { id, name, passed, detail }
}

pub fn run_all(model: &dyn Model, seed: u64) -> Vec<CheckResult> {
    CRITERIA.iter().map(|c| run_criterion(c.0, model, seed)).collect()
}

fn coin(xi: f64, theta: f64, zeta: f64) -> Matrix2 {
    build_coin(CoinParams::new(xi, theta, zeta)).expect("finite angles")
}

fn solo_steps(c: Matrix2, t: usize) -> Vec<Vec<Matrix2>> {
    vec![vec![c]; t]
}

fn sides(model: &dyn Model, steps: &[Vec<Matrix2>]) -> Result<SideProbabilities> {
    Ok(model.walk(InitialState::balanced(), steps)?.distribution().side_probabilities())
}

fn max_amplitude_diff(a: &WalkState, b: &WalkState) -> f64 {
    let t = a.capacity().max(b.capacity()) as i64;
    (0..2)
        .flat_map(|c| (-t..=t).map(move |x| (c, x)))
        .map(|(c, x)| (a.amplitude(c, x) - b.amplitude(c, x)).norm())
        .fold(0.0, f64::max)
}

fn realize(program: &StepProgram, coins: &PlayerCoins, theta: f64) -> Result<Vec<Vec<Matrix2>>> {
    Ok(program.realize(&coins.coin_set(theta)?))
}

fn first_step_closed_form(model: &dyn Model, seed: u64) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let (xi, theta, zeta) =
            (rng.gen_range(-PI..PI), rng.gen_range(-PI..PI), rng.gen_range(-PI..PI));
        let d = model.walk(InitialState::balanced(), &solo_steps(coin(xi, theta, zeta), 1))?;
        let d = d.distribution();
        let bias = (2.0 * theta).sin() * (xi - zeta).sin();
        worst = worst
            .max((d.prob(-1) - 0.5 * (1.0 + bias)).abs())
            .max((d.prob(1) - 0.5 * (1.0 - bias)).abs());
    }
    Ok((worst <= ALGEBRA_TOL, format!("200 samples, max deviation {worst:.3e} (tol 1e-12)")))
}

fn mirror_symmetry(model: &dyn Model, _: u64) -> Result<(bool, String)> {
    let mut worst_point = 0.0f64;
    let mut worst_side = 0.0f64;
    for xi in [0.0, FRAC_PI_6, FRAC_PI_3] {
        let steps = solo_steps(coin(xi, FRAC_PI_4, xi), 100);
        let d = model.walk(InitialState::balanced(), &steps)?.distribution();
        worst_point = worst_point.max(d.asymmetry());
        let sp = d.side_probabilities();
        worst_side = worst_side.max((sp.p_left - sp.p_right).abs());
    }
    Ok((
        worst_point <= SYMMETRY_TOL && worst_side <= SYMMETRY_TOL,
        format!("max |P(x)-P(-x)| {worst_point:.3e}, max |P_L-P_R| {worst_side:.3e} (tol 1e-10)"),
    ))
}

fn variance_scaling(model: &dyn Model, _: u64) -> Result<(bool, String)> {
    let t = 100usize;
    let t2 = (t * t) as f64;
    let d = model.walk(InitialState::balanced(), &solo_steps(coin(0.0, FRAC_PI_4, 0.0), t))?;
    let (_, var) = d.distribution().moments();
    let target = 1.0 - FRAC_PI_4.sin();
    let rel = (var / t2 / target - 1.0).abs();
    let d = model.walk(InitialState::balanced(), &solo_steps(coin(0.0, 0.0, 0.0), t))?;
    let (_, ballistic) = d.distribution().moments();
    let ballistic_ok = (ballistic - t2).abs() <= ALGEBRA_TOL * t2;
    Ok((
        rel <= VARIANCE_REL_TOL && ballistic_ok,
        format!(
            "var/t^2 = {:.6} vs {target:.6} (rel {rel:.2e}, tol 5%); ballistic var = {ballistic}",
            var / t2
        ),
    ))
}

fn solo_futility(model: &dyn Model, _: u64) -> Result<(bool, String)> {
    let theta = FRAC_PI_4;
    let mut ok = true;
    let mut margins_a = Vec::new();
    let mut margins_b = Vec::new();
    for k in 1..=12 {
        let angle = k as f64 * PI / 24.0;
        let a = sides(model, &solo_steps(coin(angle, theta, 0.0), 100))?;
        let b = sides(model, &solo_steps(coin(0.0, theta, angle), 100))?;
        ok &= a.p_left > a.p_right && b.p_right > b.p_left;
        margins_a.push(a.p_left - a.p_right);
        margins_b.push(b.p_right - b.p_left);
    }
    let monotone = |m: &[f64]| m.windows(2).all(|w| w[1] >= w[0]);
    ok &= monotone(&margins_a) && monotone(&margins_b);
    Ok((
        ok,
        format!(
            "A margins {:.4}..{:.4}, B margins {:.4}..{:.4}, monotone: {}",
            margins_a[0],
            margins_a[11],
            margins_b[0],
            margins_b[11],
            monotone(&margins_a) && monotone(&margins_b)
        ),
    ))
}

fn alternating_strategy(model: &dyn Model, _: u64) -> Result<(bool, String)> {
    let cfg = GameConfig::default();
    let mut ok = true;
    let mut notes = Vec::new();
    for angle in [FRAC_PI_6, FRAC_PI_3] {
        let coins = PlayerCoins::new(angle, angle);
        for t in [2, 10, 100] {
            let sp = sides(model, &realize(&alternating_program(Player::A, t)?, &coins, cfg.theta)?)?;
            let out = decide_winner(sp, &cfg);
            let gap = (sp.p_left - sp.p_right).abs();
            let pass = out.winner == Winner::Joint && gap <= SYMMETRY_TOL;
            ok &= pass;
            if !pass {
                notes.push(format!("t={t} angle={angle:.4}: {} by {gap:.4}", out.winner));
            }
        }
        for t in [3, 101] {
            let sp = sides(model, &realize(&alternating_program(Player::A, t)?, &coins, cfg.theta)?)?;
            let lead = sp.p_left - sp.p_right;
            let pass = lead > cfg.eq_tolerance && lead < NARROW_LOSS_BOUND;
            ok &= pass;
            if !pass {
                notes.push(format!("t={t} angle={angle:.4}: P_L-P_R={lead:.4}"));
            }
        }
    }
    let detail = if ok { "even t joint, odd t narrow loss for starter".into() } else { notes.join("; ") };
    Ok((ok, detail))
}

fn sign_structure_mismatches(
    model: &dyn Model,
    order: Order,
    cfg: &GameConfig,
    resolution: usize,
) -> Result<Vec<(usize, usize, Winner)>> {
    let program = composite_program(order, cfg.steps)?;
    let cells = (0..resolution * resolution)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / resolution, k % resolution);
            let coins = PlayerCoins::new(grid_angle(i, resolution), grid_angle(j, resolution));
            let sp = sides(model, &realize(&program, &coins, cfg.theta)?)?;
            Ok((i, j, decide_winner(sp, cfg).winner))
        })
        .collect::<Result<Vec<_>>>()?;
    let last = resolution - 1;
    Ok(cells
        .into_iter()
        .filter(|&(i, j, w)| {
            let expected = if i == last || i == j {
                Winner::Joint
            } else if j > i {
                Winner::B
            } else {
                Winner::A
            };
            w != expected
        })
        .collect())
}

fn composite_guarantee(model: &dyn Model, _: u64) -> Result<(bool, String)> {
    let cfg = GameConfig::default();
    let mut joint = 0;
    for j in 0..25 {
        let coins = PlayerCoins::new(FRAC_PI_2, grid_angle(j, 25));
        let sp = sides(model, &realize(&composite_program(Order::BA, 100)?, &coins, cfg.theta)?)?;
        joint += usize::from(decide_winner(sp, &cfg).winner == Winner::Joint);
    }
    let mismatches = sign_structure_mismatches(model, Order::BA, &cfg, 13)?;
    let coins = PlayerCoins::new(0.0, FRAC_PI_6);
    let sp = sides(model, &realize(&composite_program(Order::BA, 1)?, &coins, cfg.theta)?)?;
    let anchor = (sp.p_left - 0.75).abs();
    Ok((
        joint == 25 && mismatches.is_empty() && anchor <= ALGEBRA_TOL,
        format!(
            "xi=pi/2 row joint {joint}/25; sign mismatches {} of 169; one-step P_L = {}",
            mismatches.len(),
            sp.p_left
        ),
    ))
}

fn composite_algebra(model: &dyn Model, seed: u64) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let r = 2.0 * PI;
        let (xi, theta, zeta) = (rng.gen_range(-r..r), rng.gen_range(-r..r), rng.gen_range(-r..r));
        let a = coin(xi, theta, 0.0);
        let b = coin(0.0, theta, zeta);
        worst = worst
            .max(model.composite_ba(xi, theta, zeta).max_abs_diff(&(b * a)))
            .max(model.composite_ab(xi, theta, zeta).max_abs_diff(&(a * b)));
    }
    Ok((worst <= ALGEBRA_TOL, format!("1000 triples, max deviation {worst:.3e} (tol 1e-12)")))
}

fn random_tagged_program(rng: &mut ChaCha8Rng, len: usize) -> StepProgram {
    const CHOICES: [&[CoinTag]; 4] =
        [&[CoinTag::A], &[CoinTag::B], &[CoinTag::A, CoinTag::B], &[CoinTag::B, CoinTag::A]];
    let steps = (0..len).map(|_| CHOICES[rng.gen_range(0..4)].to_vec()).collect();
    StepProgram::new(steps).expect("non-empty steps")
}

fn oracle_equivalence(model: &dyn Model, seed: u64) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x8);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let t = rng.gen_range(1..=10);
        let program = random_tagged_program(&mut rng, t);
        let coins = PlayerCoins::new(rng.gen_range(0.0..FRAC_PI_2), rng.gen_range(0.0..FRAC_PI_2));
        let theta = rng.gen_range(0.0..FRAC_PI_2);
        let init = InitialState::new(rng.gen_range(0.0..PI), rng.gen_range(0.0..2.0 * PI));
        let steps = realize(&program, &coins, theta)?;
        let fast = model.walk(init, &steps)?;
        let dense = dense_oracle_evolve(t, init, &steps)?;
        worst = worst.max(max_amplitude_diff(&fast, &dense));
    }
    Ok((worst <= ALGEBRA_TOL, format!("50 programs, max amplitude deviation {worst:.3e}")))
}

fn figure_reproduction(model: &dyn Model, _: u64) -> Result<(bool, String)> {
    let mut ordered = 0;
    let mut dists = Vec::new();
    for panel in bias_panels() {
        let d = model
            .walk(InitialState::balanced(), &solo_steps(build_coin(panel.coin)?, FIGURE_STEPS))?
            .distribution();
        let sp = d.side_probabilities();
        ordered += usize::from(match panel.heavier {
            Heavier::Left => sp.p_left > sp.p_right,
            Heavier::Right => sp.p_right > sp.p_left,
        });
        dists.push(d);
    }
    let mirror = [(0, 1), (2, 3)]
        .iter()
        .map(|&(i, j)| {
            dists[i].p.iter().zip(&dists[j].mirrored().p).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
        })
        .fold(0.0, f64::max);
    let cfg = GameConfig { steps: FIGURE_STEPS, ..Default::default() };
    let mismatches = sign_structure_mismatches(model, Order::BA, &cfg, REGION_RESOLUTION)?;
    Ok((
        ordered == 4 && mirror <= SYMMETRY_TOL && mismatches.is_empty(),
        format!(
            "panel orderings {ordered}/4, mirror deviation {mirror:.3e}, region mismatches {}",
            mismatches.len()
        ),
    ))
}

/// A string the grammar cannot accept, built by breaking `valid`.
pub fn break_program(rng: &mut ChaCha8Rng, valid: &str) -> String {
    match rng.gen_range(0..8) {
        0 => {
            let bad = ['x', 'C', '*', '-', '.', '!', '[', 'a'][rng.gen_range(0..8)];
            let mut at = rng.gen_range(0..=valid.len());
            while !valid.is_char_boundary(at) {
                at -= 1;
            }
            format!("{}{bad}{}", &valid[..at], &valid[at..])
        }
        1 => format!("A^{} {valid}", rng.gen_range(1..9)),
        2 => format!("({valid}"),
        3 => format!("{valid})"),
        4 => format!("({valid})^0"),
        5 => format!("{valid} BABAB"),
        6 => format!("({valid})"),
        _ => " ".repeat(rng.gen_range(0..3)),
    }
}

fn strategy_language(model: &dyn Model, seed: u64) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x10);
    let mut round_trip_failures = 0;
    for _ in 0..200 {
        let len = rng.gen_range(1..60);
        let steps = (0..len)
            .map(|_| {
                (0..rng.gen_range(1..=4))
                    .map(|_| if rng.gen_bool(0.5) { CoinTag::A } else { CoinTag::B })
                    .collect()
            })
            .collect();
        let p = StepProgram::new(steps)?;
        if compile(&render(&p)).ok().as_ref() != Some(&p) {
            round_trip_failures += 1;
        }
    }

    let program = compile("(AB)^20")?;
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let (xi, theta, zeta) = (
            rng.gen_range(0.0..FRAC_PI_2),
            rng.gen_range(0.0..FRAC_PI_2),
            rng.gen_range(0.0..FRAC_PI_2),
        );
        let coins = PlayerCoins::new(xi, zeta);
        let via_dsl = model.walk(InitialState::balanced(), &realize(&program, &coins, theta)?)?;
        let composite = solo_steps(model.composite_ba(xi, theta, zeta), 20);
        let via_closed_form = model.walk(InitialState::balanced(), &composite)?;
        worst = worst.max(max_amplitude_diff(&via_dsl, &via_closed_form));
    }

    let mut accepted_invalid = 0;
    for _ in 0..500 {
        let len = rng.gen_range(1..12);
        let valid = render(&random_tagged_program(&mut rng, len));
        let broken = break_program(&mut rng, &valid);
        match parse(&broken) {
            Err(e) if e.position <= broken.len() => {}
            _ => accepted_invalid += 1,
        }
    }

    Ok((
        round_trip_failures == 0 && worst <= ALGEBRA_TOL && accepted_invalid == 0,
        format!(
            "round-trip failures {round_trip_failures}/200; (AB)^20 vs composite {worst:.3e}; \
             invalid inputs accepted {accepted_invalid}/500"
        ),
    ))
}

/// Render results as a table and report overall success.
pub fn report(results: &[CheckResult]) -> (String, bool) {
    let mut out = String::new();
    for r in results {
        out.push_str(&r.line());
        out.push('\n');
    }
    let passed = results.iter().filter(|r| r.passed).count();
    out.push_str(&format!("{passed}/{} criteria passed\n", results.len()));
    (out, passed == results.len())
}

pub fn parse_mutant(name: &str) -> Result<Mutant> {
    match name {
        "reversed-shift" => Ok(Mutant::ReversedShift),
        "tampered-composite" => Ok(Mutant::TamperedComposite),
        other => Err(anyhow!("unknown mutant {other:?}")),
    }
}
