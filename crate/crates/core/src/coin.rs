//! 2×2 complex matrices and the coin family acting on the walker's internal
//! two-level register.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// A 2×2 complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix2 {
    pub m00: C64,
    pub m01: C64,
    pub m10: C64,
    pub m11: C64,
}

impl Matrix2 {
    pub const IDENTITY: Matrix2 = Matrix2::new(ONE, ZERO, ZERO, ONE);

    pub const fn new(m00: C64, m01: C64, m10: C64, m11: C64) -> Self {
        Matrix2 { m00, m01, m10, m11 }
    }

    /// Build from real entries.
    pub fn real(m00: f64, m01: f64, m10: f64, m11: f64) -> Self {
        Matrix2::new(m00.into(), m01.into(), m10.into(), m11.into())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Matrix2::new(self.m00.conj(), self.m10.conj(), self.m01.conj(), self.m11.conj())
    }

    pub fn det(&self) -> C64 {
        self.m00 * self.m11 - self.m01 * self.m10
    }

    /// Apply to a coin vector `(a0, a1)`.
    #[inline]
    pub fn apply(&self, a0: C64, a1: C64) -> (C64, C64) {
        (self.m00 * a0 + self.m01 * a1, self.m10 * a0 + self.m11 * a1)
    }

    pub fn entries(&self) -> [C64; 4] {
        [self.m00, self.m01, self.m10, self.m11]
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Matrix2) -> f64 {
        self.entries()
            .iter()
            .zip(other.entries().iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `M†M - I`.
    pub fn unitarity_deviation(&self) -> f64 {
        (self.adjoint() * *self).max_abs_diff(&Matrix2::IDENTITY)
    }

    pub fn is_finite(&self) -> bool {
        self.entries().iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;

    fn mul(self, b: Matrix2) -> Matrix2 {
        multiply(&self, &b)
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.m00, self.m01, self.m10, self.m11)
    }
}

/// Standard matrix product `a·b`.
pub fn multiply(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    Matrix2::new(
        a.m00 * b.m00 + a.m01 * b.m10,
        a.m00 * b.m01 + a.m01 * b.m11,
        a.m10 * b.m00 + a.m11 * b.m10,
        a.m10 * b.m01 + a.m11 * b.m11,
    )
}

/// `true` iff every entry of `M†M - I` has modulus at most `tol`.
pub fn is_unitary(m: &Matrix2, tol: f64) -> bool {
    m.unitarity_deviation() <= tol
}

/// The angle triple `(ξ, θ, ζ)` of a coin, in radians.
///
/// No range is enforced here; the game layer restricts player angles to
/// `[0, π/2]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoinParams {
    pub xi: f64,
    pub theta: f64,
    pub zeta: f64,
}

impl CoinParams {
    pub const fn new(xi: f64, theta: f64, zeta: f64) -> Self {
        CoinParams { xi, theta, zeta }
    }

    /// Player A's coin `B(ξ, θ, 0)`.
    pub const fn player_a(xi: f64, theta: f64) -> Self {
        CoinParams::new(xi, theta, 0.0)
    }

    /// Player B's coin `B(0, θ, ζ)`.
    pub const fn player_b(zeta: f64, theta: f64) -> Self {
        CoinParams::new(0.0, theta, zeta)
    }

    pub fn validate(&self) -> Result<()> {
        check_finite("xi", self.xi)?;
        check_finite("theta", self.theta)?;
        check_finite("zeta", self.zeta)
    }
}

pub(crate) fn check_finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name, value, reason: "must be finite" })
    }
}

/// `B(ξ, θ, ζ) = [[e^{iξ}cosθ, e^{iζ}sinθ], [e^{-iζ}sinθ, -e^{-iξ}cosθ]]`.
pub fn build_coin(p: CoinParams) -> Result<Matrix2> {
    p.validate()?;
    let (s, c) = p.theta.sin_cos();
    Ok(Matrix2::new(
        C64::from_polar(c, p.xi),
        C64::from_polar(s, p.zeta),
        C64::from_polar(s, -p.zeta),
        -C64::from_polar(c, -p.xi),
    ))
}

/// Closed form of `B(0, θ, ζ)·B(ξ, θ, 0)`: player A's coin acts first, then
/// player B's.
pub fn composite_ba(xi: f64, theta: f64, zeta: f64) -> Result<Matrix2> {
    CoinParams::new(xi, theta, zeta).validate()?;
    let (s, c) = theta.sin_cos();
    let (s2, c2, sc) = (s * s, c * c, s * c);
    Ok(Matrix2::new(
        C64::from_polar(c2, xi) + C64::from_polar(s2, zeta),
        sc * (ONE - C64::cis(zeta - xi)),
        sc * (C64::cis(-(zeta - xi)) - ONE),
        C64::from_polar(s2, -zeta) + C64::from_polar(c2, -xi),
    ))
}

/// Closed form of `B(ξ, θ, 0)·B(0, θ, ζ)`: player B's coin acts first, then
/// player A's.
pub fn composite_ab(xi: f64, theta: f64, zeta: f64) -> Result<Matrix2> {
    CoinParams::new(xi, theta, zeta).validate()?;
    let (s, c) = theta.sin_cos();
    let (s2, c2, sc) = (s * s, c * c, s * c);
    Ok(Matrix2::new(
        C64::from_polar(c2, xi) + C64::from_polar(s2, -zeta),
        sc * (C64::cis(zeta + xi) - ONE),
        sc * (ONE - C64::cis(-(xi + zeta))),
        // e^{+iζ}: this is what the product actually gives
        C64::from_polar(s2, zeta) + C64::from_polar(c2, -xi),
    ))
}
