use std::ops::{Add, Mul, Neg, Sub};

use crate::multivector::{Blade, Multivector16};

/// A quaternion written in geometric-algebra form `q = g + I₃u`, where
/// `I₃ = e1 e2 e3` and `u` is a Cartesian 3-vector.
///
/// In this form `I₃e_x = e2e3`, `I₃e_y = e3e1`, `I₃e_z = e1e2`, and the
/// product of two such quaternions is
/// `(g₁g₂ − u₁·u₂) + I₃(g₁u₂ + g₂u₁ − u₁×u₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub g: f64,
    pub u: [f64; 3],
}

pub(crate) fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion { g: 0.0, u: [0.0; 3] };
    pub const ONE: Quaternion = Quaternion { g: 1.0, u: [0.0; 3] };

    pub const fn new(g: f64, u: [f64; 3]) -> Self {
        Self { g, u }
    }

    pub const fn scalar(g: f64) -> Self {
        Self { g, u: [0.0; 3] }
    }

    /// Pure quaternion `I₃u`.
    pub const fn pure(u: [f64; 3]) -> Self {
        Self { g: 0.0, u }
    }

    /// Reverse, which here is the quaternion conjugate `g − I₃u`.
    pub fn reverse(self) -> Self {
        Self::new(self.g, [-self.u[0], -self.u[1], -self.u[2]])
    }

    /// `q q† = g² + u·u`.
    pub fn norm_sq(self) -> f64 {
        self.g * self.g + dot(self.u, self.u)
    }

    /// Scalar part of `p q†`, i.e. the Euclidean inner product in ℝ⁴.
    pub fn inner(self, other: Self) -> f64 {
        self.g * other.g + dot(self.u, other.u)
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.g * s, [self.u[0] * s, self.u[1] * s, self.u[2] * s])
    }

    pub fn to_multivector(self) -> Multivector16 {
        let mut m = Multivector16::scalar(self.g);
        m[Blade::new(0b0110).unwrap()] = self.u[0]; // e2e3
        m[Blade::new(0b0101).unwrap()] = -self.u[1]; // e3e1 = -e1e3
        m[Blade::new(0b0011).unwrap()] = self.u[2]; // e1e2
        m
    }
}

impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let c = cross(self.u, rhs.u);
        Self {
            g: self.g * rhs.g - dot(self.u, rhs.u),
            u: [
                self.g * rhs.u[0] + rhs.g * self.u[0] - c[0],
                self.g * rhs.u[1] + rhs.g * self.u[1] - c[1],
                self.g * rhs.u[2] + rhs.g * self.u[2] - c[2],
            ],
        }
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(
            self.g + rhs.g,
            [self.u[0] + rhs.u[0], self.u[1] + rhs.u[1], self.u[2] + rhs.u[2]],
        )
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}
