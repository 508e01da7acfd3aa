use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::EvenAlgebraError;

/// Split-complex number `c + d ε` with `ε² = +1`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Hyperbolic {
    /// Scalar part.
    pub c: f64,
    /// Coefficient of `ε`.
    pub d: f64,
}

/// Slack, in units of `|c|`, tolerated below the light cone before
/// [`Hyperbolic::sqrt`] reports an out-of-cone input. Quadratic forms land
/// exactly on the cone for zero divisors, and rounding can push them a few
/// ulps outside.
const CONE_SLACK: f64 = 16.0 * f64::EPSILON;

impl Hyperbolic {
    pub const ZERO: Hyperbolic = Hyperbolic { c: 0.0, d: 0.0 };
    pub const ONE: Hyperbolic = Hyperbolic { c: 1.0, d: 0.0 };
    pub const EPSILON: Hyperbolic = Hyperbolic { c: 0.0, d: 1.0 };

    pub const fn new(c: f64, d: f64) -> Self {
        Self { c, d }
    }

    /// `c - d ε`.
    pub fn conj(self) -> Self {
        Self::new(self.c, -self.d)
    }

    /// `(c + dε)(c - dε) = c² - d²`; zero on the null lines `|c| = |d|`.
    pub fn modulus_sq(self) -> f64 {
        self.c * self.c - self.d * self.d
    }

    pub fn is_zero_divisor(self, tol: f64) -> bool {
        (self.c.abs() - self.d.abs()).abs() <= tol
    }

    /// Components in the idempotent basis `(1 ± ε)/2`: `(c + d, c - d)`.
    /// Multiplication is componentwise in this basis.
    pub fn light_cone(self) -> (f64, f64) {
        (self.c + self.d, self.c - self.d)
    }

    pub fn from_light_cone(plus: f64, minus: f64) -> Self {
        Self::new(0.5 * (plus + minus), 0.5 * (plus - minus))
    }

    /// True when `c ≥ |d|` (future light cone, including its boundary).
    pub fn in_future_cone(self) -> bool {
        self.c >= self.d.abs()
    }

    /// Principal square root `p + qε` with `p ≥ |q|`:
    /// `p = (√(c+d) + √(c−d))/2`, `q = (√(c+d) − √(c−d))/2`.
    pub fn sqrt(self) -> Result<Self, EvenAlgebraError> {
        let (plus, minus) = self.light_cone();
        let slack = CONE_SLACK * self.c.abs();
        if !(plus >= -slack && minus >= -slack) {
            return Err(EvenAlgebraError::OutOfCone {
                c: self.c,
                d: self.d,
            });
        }
        let rp = plus.max(0.0).sqrt();
        let rm = minus.max(0.0).sqrt();
        Ok(Self::new(0.5 * (rp + rm), 0.5 * (rp - rm)))
    }

    pub fn magnitude(self) -> f64 {
        self.c.abs().max(self.d.abs())
    }

    /// `|a - b| ≤ rel · max(|a|, |b|) + abs` on both components, with the
    /// scale taken over the whole number so that a tiny `d` next to a large
    /// `c` is judged against `c`.
    pub fn approx_eq(self, other: Self, rel: f64, abs: f64) -> bool {
        let scale = self.magnitude().max(other.magnitude());
        let bound = rel * scale + abs;
        (self.c - other.c).abs() <= bound && (self.d - other.d).abs() <= bound
    }
}

impl Add for Hyperbolic {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.c + rhs.c, self.d + rhs.d)
    }
}

impl Sub for Hyperbolic {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.c - rhs.c, self.d - rhs.d)
    }
}

impl Neg for Hyperbolic {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.c, -self.d)
    }
}

impl Mul for Hyperbolic {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.c * rhs.c + self.d * rhs.d,
            self.c * rhs.d + self.d * rhs.c,
        )
    }
}

impl Mul<f64> for Hyperbolic {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self::new(self.c * rhs, self.d * rhs)
    }
}

impl fmt::Display for Hyperbolic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d < 0.0 {
            write!(f, "{} - {}ε", self.c, -self.d)
        } else {
            write!(f, "{} + {}ε", self.c, self.d)
        }
    }
}
