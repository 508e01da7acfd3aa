//! Dense arithmetic in the 16-dimensional real Clifford algebra Cl(4,0).
//!
//! Basis blades are encoded as 4-bit masks: generator `e_i` is bit `i - 1`,
//! and a blade's canonical form lists its generators in ascending order. The
//! fourth generator plays the role of `e_∞`; all four square to `+1`.
//!
//! The blade multiplication table is derived once from the transposition
//! parity rule rather than transcribed.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};
use std::sync::OnceLock;

use thiserror::Error;

/// Number of basis blades in Cl(4,0).
pub const DIM: usize = 16;

/// Default relative tolerance for coefficient comparisons.
pub const REL_TOL: f64 = 1e-12;
/// Absolute floor applied under [`REL_TOL`].
pub const ABS_FLOOR: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum MultivectorError {
    #[error("grade {0} is outside 0..=4")]
    GradeOutOfRange(u8),
    #[error("blade mask {0} is outside 0..=15")]
    MaskOutOfRange(u8),
}

/// A basis blade, stored as a bitmask over `e1..e4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Blade(u8);

impl Blade {
    pub const SCALAR: Blade = Blade(0);
    pub const E1: Blade = Blade(0b0001);
    pub const E2: Blade = Blade(0b0010);
    pub const E3: Blade = Blade(0b0100);
    pub const E4: Blade = Blade(0b1000);
    /// `I₃ = e1 e2 e3`.
    pub const I3: Blade = Blade(0b0111);
    /// `ε = e1 e2 e3 e4`.
    pub const PSEUDOSCALAR: Blade = Blade(0b1111);

    pub fn new(mask: u8) -> Result<Self, MultivectorError> {
        if mask as usize >= DIM {
            return Err(MultivectorError::MaskOutOfRange(mask));
        }
        Ok(Blade(mask))
    }

    /// Blade from a list of distinct generator indices in `1..=4`, in any
    /// order. Returns the canonical blade and the sign picked up by sorting.
    pub fn from_generators(gens: &[u8]) -> Result<(i8, Blade), MultivectorError> {
        let mut sign = 1i8;
        let mut acc = Blade::SCALAR;
        for &g in gens {
            if !(1..=4).contains(&g) {
                return Err(MultivectorError::MaskOutOfRange(g));
            }
            let (s, b) = acc.product(Blade(1 << (g - 1)));
            sign *= s;
            acc = b;
        }
        Ok((sign, acc))
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn grade(self) -> u8 {
        self.0.count_ones() as u8
    }

    pub fn is_even(self) -> bool {
        self.grade().is_multiple_of(2)
    }

    /// Sign of the reverse on this blade, `(-1)^{k(k-1)/2}`.
    pub fn reverse_sign(self) -> f64 {
        let k = self.grade() as u32;
        if (k * k.saturating_sub(1) / 2).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    /// Geometric product of two canonical blades: `(sign, blade)`.
    ///
    /// Every generator of `self` must move past the strictly smaller
    /// generators of `other` to reach sorted order; repeated generators then
    /// annihilate with square `+1`.
    pub fn product(self, other: Blade) -> (i8, Blade) {
        let mut swaps = 0u32;
        let mut a = self.0 >> 1;
        while a != 0 {
            swaps += (a & other.0).count_ones();
            a >>= 1;
        }
        let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
        (sign, Blade(self.0 ^ other.0))
    }

    pub fn all() -> impl Iterator<Item = Blade> {
        (0..DIM as u8).map(Blade)
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        for i in 0..4 {
            if self.0 & (1 << i) != 0 {
                write!(f, "e{}", i + 1)?;
            }
        }
        Ok(())
    }
}

struct ProductTable {
    sign: [[f64; DIM]; DIM],
    target: [[u8; DIM]; DIM],
}

fn table() -> &'static ProductTable {
    static TABLE: OnceLock<ProductTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = ProductTable {
            sign: [[0.0; DIM]; DIM],
            target: [[0; DIM]; DIM],
        };
        for a in Blade::all() {
            for b in Blade::all() {
                let (s, c) = a.product(b);
                t.sign[a.index()][b.index()] = s as f64;
                t.target[a.index()][b.index()] = c.0;
            }
        }
        t
    })
}

/// An element of Cl(4,0): one real coefficient per basis blade, indexed by
/// blade mask.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Multivector16 {
    coeffs: [f64; DIM],
}

impl Default for Multivector16 {
    fn default() -> Self {
        Self::zero()
    }
}

impl Multivector16 {
    pub const fn zero() -> Self {
        Self { coeffs: [0.0; DIM] }
    }

    pub const fn from_coeffs(coeffs: [f64; DIM]) -> Self {
        Self { coeffs }
    }

    pub fn scalar(s: f64) -> Self {
        Self::blade(Blade::SCALAR, s)
    }

    pub fn blade(b: Blade, coeff: f64) -> Self {
        let mut m = Self::zero();
        m.coeffs[b.index()] = coeff;
        m
    }

    /// Basis vector `e_i`, `i ∈ 1..=4`.
    pub fn basis_vector(i: u8) -> Result<Self, MultivectorError> {
        let (_, b) = Blade::from_generators(&[i])?;
        Ok(Self::blade(b, 1.0))
    }

    /// Grade-1 element `x e1 + y e2 + z e3`.
    pub fn vector3(v: [f64; 3]) -> Self {
        let mut m = Self::zero();
        m.coeffs[Blade::E1.index()] = v[0];
        m.coeffs[Blade::E2.index()] = v[1];
        m.coeffs[Blade::E3.index()] = v[2];
        m
    }

    pub fn pseudoscalar() -> Self {
        Self::blade(Blade::PSEUDOSCALAR, 1.0)
    }

    pub fn i3() -> Self {
        Self::blade(Blade::I3, 1.0)
    }

    pub fn coeffs(&self) -> &[f64; DIM] {
        &self.coeffs
    }

    pub fn get(&self, b: Blade) -> f64 {
        self.coeffs[b.index()]
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    pub fn geometric_product(&self, rhs: &Self) -> Self {
        let t = table();
        let mut out = [0.0; DIM];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                if b == 0.0 {
                    continue;
                }
                out[t.target[i][j] as usize] += t.sign[i][j] * a * b;
            }
        }
        Self { coeffs: out }
    }

    pub fn reverse(&self) -> Self {
        let mut out = self.coeffs;
        for b in Blade::all() {
            out[b.index()] *= b.reverse_sign();
        }
        Self { coeffs: out }
    }

    pub fn grade_projection(&self, k: u8) -> Result<Self, MultivectorError> {
        if k > 4 {
            return Err(MultivectorError::GradeOutOfRange(k));
        }
        let mut out = [0.0; DIM];
        for b in Blade::all().filter(|b| b.grade() == k) {
            out[b.index()] = self.coeffs[b.index()];
        }
        Ok(Self { coeffs: out })
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    /// Largest absolute coefficient on odd-grade blades.
    pub fn odd_magnitude(&self) -> f64 {
        Blade::all()
            .filter(|b| !b.is_even())
            .map(|b| self.coeffs[b.index()].abs())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = self.coeffs;
        out.iter_mut().for_each(|c| *c *= s);
        Self { coeffs: out }
    }

    /// Coefficient-wise comparison: `|a - b| ≤ rel · max(|a|, |b|) + abs`.
    pub fn approx_eq_with(&self, other: &Self, rel: f64, abs: f64) -> bool {
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .all(|(a, b)| (a - b).abs() <= rel * a.abs().max(b.abs()) + abs)
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.approx_eq_with(other, REL_TOL, ABS_FLOOR)
    }
}

impl Index<Blade> for Multivector16 {
    type Output = f64;
    fn index(&self, b: Blade) -> &f64 {
        &self.coeffs[b.index()]
    }
}

impl IndexMut<Blade> for Multivector16 {
    fn index_mut(&mut self, b: Blade) -> &mut f64 {
        &mut self.coeffs[b.index()]
    }
}

impl Add for Multivector16 {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl AddAssign for Multivector16 {
    fn add_assign(&mut self, rhs: Self) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a += b;
        }
    }
}

impl Sub for Multivector16 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for Multivector16 {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul for Multivector16 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.geometric_product(&rhs)
    }
}

impl Mul<f64> for Multivector16 {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

impl fmt::Display for Multivector16 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for b in Blade::all() {
            let c = self.coeffs[b.index()];
            if c == 0.0 {
                continue;
            }
            if wrote {
                f.write_str(if c < 0.0 { " - " } else { " + " })?;
            } else if c < 0.0 {
                f.write_str("-")?;
            }
            if b == Blade::SCALAR {
                write!(f, "{}", c.abs())?;
            } else {
                write!(f, "{}{}", c.abs(), b)?;
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}
