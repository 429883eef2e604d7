//! Angle literals: `pi/4`, `5pi/12`, `-pi/2`, `2*pi/3`, `0.5`, `1e-3`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("bad angle {input:?} at position {position}: {message}")]
pub struct AngleError {
    pub input: String,
    pub position: usize,
    pub message: &'static str,
}

/// Radians, parsed from a literal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Angle(pub f64);

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Angle {
    type Err = AngleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_angle(s).map(Angle)
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Number(x) if x.is_finite() => Ok(Angle(x)),
            Raw::Number(x) => Err(serde::de::Error::custom(format!("angle {x} is not finite"))),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

struct Scanner<'a> {
    src: &'a str,
    pos: usize,
}

impl Scanner<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, prefix: &str) -> bool {
        if self.rest().starts_with(prefix) {
            self.pos += prefix.len();
            true
        } else {
            false
        }
    }

    fn eat_while(&mut self, f: impl Fn(char) -> bool) {
        while let Some(c) = self.rest().chars().next().filter(|&c| f(c)) {
            self.pos += c.len_utf8();
        }
    }

    fn fail<T>(&self, position: usize, message: &'static str) -> Result<T, AngleError> {
        Err(AngleError { input: self.src.to_string(), position, message })
    }

    /// Unsigned decimal literal, if one starts here.
    fn number(&mut self) -> Result<Option<f64>, AngleError> {
        let start = self.pos;
        self.eat_while(|c| c.is_ascii_digit());
        if self.eat(".") {
            self.eat_while(|c| c.is_ascii_digit());
        }
        if self.pos == start {
            return Ok(None);
        }
        let mantissa_end = self.pos;
        if self.eat("e") || self.eat("E") {
            let _ = self.eat("+") || self.eat("-");
            let digits = self.pos;
            self.eat_while(|c| c.is_ascii_digit());
            if self.pos == digits {
                return self.fail(mantissa_end, "incomplete exponent");
            }
        }
        match self.src[start..self.pos].parse::<f64>() {
            Ok(x) => Ok(Some(x)),
            Err(_) => self.fail(start, "malformed number"),
        }
    }
}

pub fn parse_angle(input: &str) -> Result<f64, AngleError> {
    let mut sc = Scanner { src: input, pos: 0 };
    sc.eat_while(char::is_whitespace);
    if sc.rest().is_empty() {
        return sc.fail(sc.pos, "empty angle");
    }
    let sign = if sc.eat("-") {
        -1.0
    } else {
        let _ = sc.eat("+");
        1.0
    };
    let coeff = sc.number()?;
    let has_star = sc.eat("*");
    let mut value = if sc.eat("pi") || sc.eat("π") {
        coeff.unwrap_or(1.0) * PI
    } else if has_star {
        return sc.fail(sc.pos, "expected 'pi' after '*'");
    } else if let Some(c) = coeff {
        c
    } else {
        return sc.fail(sc.pos, "expected a number or 'pi'");
    };
    if sc.eat("/") {
        let at = sc.pos;
        match sc.number()? {
            Some(d) if d != 0.0 => value /= d,
            Some(_) => return sc.fail(at, "division by zero"),
            None => return sc.fail(at, "expected a divisor"),
        }
    }
    sc.eat_while(char::is_whitespace);
    if !sc.rest().is_empty() {
        return sc.fail(sc.pos, "unexpected trailing input");
    }
    let value = sign * value;
    if !value.is_finite() {
        return sc.fail(0, "angle is not finite");
    }
    Ok(value)
}
