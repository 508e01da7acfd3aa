//! The eight-dimensional even subalgebra `K^λ` of Cl(4,0).
//!
//! Every element is a quaternion pair `X = q_r + q_d ε`. The orientation tag
//! `λ` scales the seven non-scalar basis blades
//! `{e_xe_y, e_ze_x, e_ye_z, e_xe_∞, e_ye_∞, e_ze_∞, I₃e_∞}`, so the
//! coordinates stored in a [`KElement`] are read against the `λ`-scaled
//! basis. Products and norms are always evaluated on the multivector the
//! coordinates denote, and split-complex results are expressed against the
//! pseudoscalar `ε = e1e2e3e4` itself.
//!
//! Two norms live here side by side:
//!
//! * the geometric norm `‖X‖ = √(XX†)`, split-complex valued, taken with the
//!   principal square root;
//! * the scalar norm, the Pythagorean length in eight dimensions, reported
//!   together with the `ε`-coefficient of `XX†` (the orthogonality defect)
//!   so callers can see whether the two conventions agree on a given input.

mod hyperbolic;
mod quaternion;

use std::fmt;

use rand::Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::multivector::{Blade, Multivector16, ABS_FLOOR};

pub use hyperbolic::Hyperbolic;
pub use quaternion::Quaternion;

/// Relative tolerance used when comparing the two sides of the composition
/// law.
pub const COMPOSITION_TOL: f64 = 1e-10;

/// Odd-grade content tolerated by [`KElement::extract`], relative to the
/// largest coefficient.
pub const EXTRACT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum EvenAlgebraError {
    #[error("multivector has odd-grade content {0:e}; not an element of K")]
    OddGrade(f64),
    #[error("orientation mismatch: {0} vs {1}")]
    OrientationMismatch(Orientation, Orientation),
    #[error("hyperbolic number {c} + {d}ε lies outside the future light cone")]
    OutOfCone { c: f64, d: f64 },
    #[error("sphere radius must be positive, got {0}")]
    InvalidRadius(f64),
}

/// Orientation `λ = ±1` of the basis of `K^λ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Orientation {
    #[default]
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Positive => 1.0,
            Orientation::Negative => -1.0,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Orientation::Positive => 1,
            Orientation::Negative => -1,
        }
    }

    pub fn from_sign(sign: i8) -> Option<Self> {
        match sign {
            1 => Some(Orientation::Positive),
            -1 => Some(Orientation::Negative),
            _ => None,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Positive => "+1",
            Orientation::Negative => "-1",
        })
    }
}

/// An element `q_r + q_d ε` of `K^λ`, in `λ`-basis coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct KElement {
    pub q_r: Quaternion,
    pub q_d: Quaternion,
    pub orientation: Orientation,
}

/// Maps λ-basis coordinates to standard-basis coordinates and back (the map
/// is an involution).
fn reorient(q_r: Quaternion, q_d: Quaternion, o: Orientation) -> (Quaternion, Quaternion) {
    match o {
        Orientation::Positive => (q_r, q_d),
        Orientation::Negative => (Quaternion::new(q_r.g, (-q_r).u), -q_d),
    }
}

const E1E4: u8 = 0b1001;
const E2E4: u8 = 0b1010;
const E3E4: u8 = 0b1100;

impl KElement {
    pub const fn new(q_r: Quaternion, q_d: Quaternion, orientation: Orientation) -> Self {
        Self {
            q_r,
            q_d,
            orientation,
        }
    }

    pub const fn scalar(s: f64, orientation: Orientation) -> Self {
        Self::new(Quaternion::scalar(s), Quaternion::ZERO, orientation)
    }

    pub fn zero(orientation: Orientation) -> Self {
        Self::scalar(0.0, orientation)
    }

    /// Coordinates `(g, u_x, u_y, u_z, h, v_x, v_y, v_z)`.
    pub fn coords(&self) -> [f64; 8] {
        let (r, d) = (self.q_r, self.q_d);
        [r.g, r.u[0], r.u[1], r.u[2], d.g, d.u[0], d.u[1], d.u[2]]
    }

    pub fn from_coords(c: [f64; 8], orientation: Orientation) -> Self {
        Self::new(
            Quaternion::new(c[0], [c[1], c[2], c[3]]),
            Quaternion::new(c[4], [c[5], c[6], c[7]]),
            orientation,
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|&c| c == 0.0)
    }

    /// The quaternion pair in the standard (`λ = +1`) basis.
    pub fn standard_pair(&self) -> (Quaternion, Quaternion) {
        reorient(self.q_r, self.q_d, self.orientation)
    }

    fn from_standard_pair(r: Quaternion, d: Quaternion, o: Orientation) -> Self {
        let (q_r, q_d) = reorient(r, d, o);
        Self::new(q_r, q_d, o)
    }

    /// Same multivector, coordinates re-expressed in the other orientation's
    /// basis.
    pub fn reexpress(&self, target: Orientation) -> Self {
        let (r, d) = self.standard_pair();
        Self::from_standard_pair(r, d, target)
    }

    pub fn embed(&self) -> Multivector16 {
        let (r, d) = self.standard_pair();
        let mut m = r.to_multivector();
        m[Blade::PSEUDOSCALAR] = d.g;
        // (I₃v)(I₃e₄) = −v e₄
        m[Blade::new(E1E4).unwrap()] = -d.u[0];
        m[Blade::new(E2E4).unwrap()] = -d.u[1];
        m[Blade::new(E3E4).unwrap()] = -d.u[2];
        m
    }

    pub fn extract(m: &Multivector16, orientation: Orientation) -> Result<Self, EvenAlgebraError> {
        let odd = m.odd_magnitude();
        if odd > EXTRACT_TOL * m.max_abs().max(1.0) {
            return Err(EvenAlgebraError::OddGrade(odd));
        }
        let b = |mask: u8| m[Blade::new(mask).unwrap()];
        let r = Quaternion::new(m.scalar_part(), [b(0b0110), -b(0b0101), b(0b0011)]);
        let d = Quaternion::new(b(0b1111), [-b(E1E4), -b(E2E4), -b(E3E4)]);
        Ok(Self::from_standard_pair(r, d, orientation))
    }

    fn check_same(&self, other: &Self) -> Result<(), EvenAlgebraError> {
        if self.orientation != other.orientation {
            return Err(EvenAlgebraError::OrientationMismatch(
                self.orientation,
                other.orientation,
            ));
        }
        Ok(())
    }

    /// Product in `K^λ`: `(r₁ + d₁ε)(r₂ + d₂ε) = (r₁r₂ + d₁d₂) + (r₁d₂ + d₁r₂)ε`,
    /// using that `ε` is central and squares to one.
    pub fn k_product(&self, other: &Self) -> Result<Self, EvenAlgebraError> {
        self.check_same(other)?;
        let (r1, d1) = self.standard_pair();
        let (r2, d2) = other.standard_pair();
        Ok(Self::from_standard_pair(
            r1 * r2 + d1 * d2,
            r1 * d2 + d1 * r2,
            self.orientation,
        ))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, EvenAlgebraError> {
        self.check_same(other)?;
        Ok(Self::new(
            self.q_r + other.q_r,
            self.q_d + other.q_d,
            self.orientation,
        ))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.q_r.scale(s), self.q_d.scale(s), self.orientation)
    }

    pub fn reverse(&self) -> Self {
        Self::new(self.q_r.reverse(), self.q_d.reverse(), self.orientation)
    }

    /// `XX† = (q_r q_r† + q_d q_d†) + (q_r q_d† + q_d q_r†)ε`.
    pub fn quadratic_form(&self) -> Hyperbolic {
        let (r, d) = self.standard_pair();
        Hyperbolic::new(r.norm_sq() + d.norm_sq(), 2.0 * r.inner(d))
    }

    /// `√(XX†)` with the principal root. Evaluated from the light-cone
    /// components `|q_r ± q_d|²`, which are non-negative by construction.
    pub fn geometric_norm(&self) -> Hyperbolic {
        let (r, d) = self.standard_pair();
        let rp = (r + d).norm_sq().sqrt();
        let rm = (r - d).norm_sq().sqrt();
        Hyperbolic::new(0.5 * (rp + rm), 0.5 * (rp - rm))
    }

    /// The `ε`-coefficient of `XX†`; zero on the 7-sphere condition.
    pub fn orthogonality_defect(&self) -> f64 {
        self.quadratic_form().d
    }

    /// Pythagorean length `√(g² + u·u + h² + v·v)`, regardless of the defect.
    pub fn scalar_norm(&self) -> f64 {
        (self.q_r.norm_sq() + self.q_d.norm_sq()).sqrt()
    }

    pub fn scalar_norm_report(&self, tol: f64) -> ScalarNormReport {
        let defect = self.orthogonality_defect();
        ScalarNormReport {
            norm: self.scalar_norm(),
            defect,
            condition_holds: defect.abs() <= tol,
        }
    }

    pub fn is_on_seven_sphere(&self, radius: f64, tol: f64) -> Result<bool, EvenAlgebraError> {
        if !(radius > 0.0) {
            return Err(EvenAlgebraError::InvalidRadius(radius));
        }
        Ok(self.orthogonality_defect().abs() <= tol && (self.scalar_norm() - radius).abs() <= tol)
    }

    pub fn approx_eq(&self, other: &Self, rel: f64, abs: f64) -> bool {
        self.orientation == other.orientation
            && self
                .coords()
                .iter()
                .zip(other.coords())
                .all(|(a, b)| (a - b).abs() <= rel * a.abs().max(b.abs()) + abs)
    }
}

impl fmt::Display for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coords();
        write!(
            f,
            "[λ={}] ({}, {:?}) + ({}, {:?})ε",
            self.orientation,
            c[0],
            &c[1..4],
            c[4],
            &c[5..8]
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarNormReport {
    pub norm: f64,
    pub defect: f64,
    /// Whether `|defect| ≤ tol`, the condition under which the scalar norm
    /// coincides with the geometric one.
    pub condition_holds: bool,
}

/// Both sides of `‖XY‖ = ‖X‖‖Y‖` under the geometric norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompositionReport {
    pub lhs: Hyperbolic,
    pub rhs: Hyperbolic,
    pub equal: bool,
}

pub fn verify_composition(x: &KElement, y: &KElement) -> Result<CompositionReport, EvenAlgebraError> {
    verify_composition_with_tol(x, y, COMPOSITION_TOL)
}

pub fn verify_composition_with_tol(
    x: &KElement,
    y: &KElement,
    rel: f64,
) -> Result<CompositionReport, EvenAlgebraError> {
    let lhs = x.k_product(y)?.geometric_norm();
    let rhs = x.geometric_norm() * y.geometric_norm();
    Ok(CompositionReport {
        lhs,
        rhs,
        equal: lhs.approx_eq(rhs, rel, ABS_FLOOR),
    })
}

/// Diagonal change-of-basis matrix taking the `K^+` basis to the `K^-`
/// basis: the scalar is fixed and the seven other blades flip sign.
pub fn change_of_basis_matrix() -> [[f64; 8]; 8] {
    let mut m = [[0.0; 8]; 8];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = if i == 0 { 1.0 } else { -1.0 };
    }
    m
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn determinant<const N: usize>(mut m: [[f64; N]; N]) -> f64 {
    let mut det = 1.0;
    for col in 0..N {
        let pivot = (col..N)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap();
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for row in col + 1..N {
            let f = m[row][col] / m[col][col];
            for k in col..N {
                m[row][k] -= f * m[col][k];
            }
        }
    }
    det
}

pub fn mat_mul<const N: usize>(a: &[[f64; N]; N], b: &[[f64; N]; N]) -> [[f64; N]; N] {
    let mut out = [[0.0; N]; N];
    for i in 0..N {
        for j in 0..N {
            out[i][j] = (0..N).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

/// Determinant of the `K^+ → K^-` change of basis; `−1` for opposite
/// orientations.
pub fn orientation_determinant() -> f64 {
    determinant(change_of_basis_matrix())
}

/// Element with independent standard normal coordinates.
pub fn random_element<R: Rng + ?Sized>(rng: &mut R, orientation: Orientation) -> KElement {
    let mut c = [0.0; 8];
    for v in c.iter_mut() {
        *v = rng.sample(StandardNormal);
    }
    KElement::from_coords(c, orientation)
}

/// Random element with zero orthogonality defect: `q_d` is made orthogonal
/// to `q_r` in ℝ⁴ (standard basis) by one Gram–Schmidt step.
pub fn random_zero_defect<R: Rng + ?Sized>(rng: &mut R, orientation: Orientation) -> KElement {
    loop {
        let x = random_element(rng, orientation);
        let (r, d) = x.standard_pair();
        let rr = r.norm_sq();
        if rr < 1e-6 {
            continue;
        }
        let d = d - r.scale(r.inner(d) / rr);
        // a second pass removes the residue left by rounding
        let d = d - r.scale(r.inner(d) / rr);
        return KElement::from_standard_pair(r, d, orientation);
    }
}
