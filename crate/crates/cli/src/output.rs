//! Byte-stable CSV and JSON renderings. Floats use the shortest decimal
//! that round-trips to the same `f64` (at most 17 significant digits),
//! `.` as decimal separator and `\n` line endings.

use serde::Serialize;

use qwalk_core::game::{GameOutcome, WinnerRegionMap};
use qwalk_core::Distribution;

pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        // folds -0.0 into 0.0
        return "0.0".to_string();
    }
    format!("{x:?}")
}

pub fn distribution_csv(d: &Distribution) -> String {
    let mut out = String::from("x,p\n");
    for (x, p) in d.iter() {
        out.push_str(&format!("{x},{}\n", fmt_f64(p)));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WalkSummary {
    pub t: usize,
    #[serde(rename = "P_L")]
    pub p_left: f64,
    #[serde(rename = "P_R")]
    pub p_right: f64,
    #[serde(rename = "P_origin")]
    pub p_origin: f64,
    pub mean: f64,
    pub variance: f64,
}

impl WalkSummary {
    pub fn of(d: &Distribution) -> WalkSummary {
        let sp = d.side_probabilities();
        let (mean, variance) = d.moments();
        WalkSummary {
            t: d.t,
            p_left: sp.p_left,
            p_right: sp.p_right,
            p_origin: sp.p_origin,
            mean,
            variance,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GameReport {
    #[serde(rename = "P_L")]
    pub p_left: f64,
    #[serde(rename = "P_R")]
    pub p_right: f64,
    #[serde(rename = "P_origin")]
    pub p_origin: f64,
    pub winner: String,
    /// `P_R - P_L`
    pub margin: f64,
    pub steps: usize,
    pub strategy: String,
}

impl GameReport {
    pub fn new(outcome: &GameOutcome, steps: usize, strategy: String) -> GameReport {
        GameReport {
            p_left: outcome.p_left,
            p_right: outcome.p_right,
            p_origin: outcome.p_origin,
            winner: outcome.winner.to_string(),
            margin: outcome.margin(),
            steps,
            strategy,
        }
    }

    pub fn csv(&self) -> String {
        format!(
            "P_L,P_R,P_origin,winner,margin,steps,strategy\n{},{},{},{},{},{},\"{}\"\n",
            fmt_f64(self.p_left),
            fmt_f64(self.p_right),
            fmt_f64(self.p_origin),
            self.winner,
            fmt_f64(self.margin),
            self.steps,
            self.strategy
        )
    }
}

pub fn region_csv(map: &WinnerRegionMap) -> String {
    let mut out = String::from("xi,zeta,margin,winner\n");
    for c in &map.cells {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_f64(c.xi),
            fmt_f64(c.zeta),
            fmt_f64(c.margin),
            c.winner
        ));
    }
    out
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data always serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format() {
        assert_eq!(fmt_f64(1.0), "1.0");
        assert_eq!(fmt_f64(-0.0), "0.0");
        assert_eq!(fmt_f64(0.1 + 0.2), "0.30000000000000004");
        assert_eq!(fmt_f64(1e-20), "1e-20");
        for x in [std::f64::consts::PI, 1.0 / 3.0, 2.5e-300] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn zero_step_distribution() {
        let d = Distribution { t: 0, p: vec![1.0] };
        assert_eq!(distribution_csv(&d), "x,p\n0,1.0\n");
    }
}
