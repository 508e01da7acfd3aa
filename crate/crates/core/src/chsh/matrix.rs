use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::bell::UnitVector3;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Dense square complex matrix of fixed size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMatrix<const N: usize>(pub [[Complex64; N]; N]);

pub type Mat2 = CMatrix<2>;
/// 4×4 complex operator on two qubits.
pub type Operator4 = CMatrix<4>;

impl<const N: usize> CMatrix<N> {
    pub fn zero() -> Self {
        Self([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            m.0[i][i] = ONE;
        }
        m
    }

    pub fn from_real_diag(d: [f64; N]) -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            m.0[i][i] = Complex64::new(d[i], 0.0);
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for i in 0..N {
            for j in 0..N {
                out.0[i][j] = self.0[j][i].conj();
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = *self;
        out.0.iter_mut().flatten().for_each(|z| *z *= s);
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..N).map(|i| self.0[i][i]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest `|M_ij − conj(M_ji)|`.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..N {
            for j in 0..N {
                worst = worst.max((self.0[i][j] - self.0[j][i].conj()).norm());
            }
        }
        worst
    }

    pub fn apply(&self, v: &[Complex64; N]) -> [Complex64; N] {
        let mut out = [ZERO; N];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..N).map(|j| self.0[i][j] * v[j]).sum();
        }
        out
    }

    /// `⟨v|M|v⟩`.
    pub fn expectation(&self, v: &[Complex64; N]) -> Complex64 {
        let mv = self.apply(v);
        v.iter().zip(mv.iter()).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .all(|(a, b)| (a - b).norm() <= tol)
    }
}

impl<const N: usize> Index<(usize, usize)> for CMatrix<N> {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.0[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for CMatrix<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.0[i][j]
    }
}

impl<const N: usize> Add for CMatrix<N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (a, b) in self.0.iter_mut().flatten().zip(rhs.0.iter().flatten()) {
            *a += b;
        }
        self
    }
}

impl<const N: usize> Sub for CMatrix<N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + rhs.scale(-1.0)
    }
}

impl<const N: usize> Mul for CMatrix<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for i in 0..N {
            for j in 0..N {
                out.0[i][j] = (0..N).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        out
    }
}

pub fn pauli_x() -> Mat2 {
    CMatrix([[ZERO, ONE], [ONE, ZERO]])
}

pub fn pauli_y() -> Mat2 {
    CMatrix([[ZERO, -I], [I, ZERO]])
}

pub fn pauli_z() -> Mat2 {
    CMatrix([[ONE, ZERO], [ZERO, -ONE]])
}

/// `σ·a = a_x σ_x + a_y σ_y + a_z σ_z`.
pub fn pauli_dot(a: UnitVector3) -> Mat2 {
    pauli_x().scale(a.x()) + pauli_y().scale(a.y()) + pauli_z().scale(a.z())
}

/// Kronecker product `A ⊗ B`, first factor on the high qubit.
pub fn kron(a: &Mat2, b: &Mat2) -> Operator4 {
    let mut out = Operator4::zero();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.0[2 * i + k][2 * j + l] = a.0[i][j] * b.0[k][l];
                }
            }
        }
    }
    out
}

/// Singlet `(|01⟩ − |10⟩)/√2` in the basis `|00⟩, |01⟩, |10⟩, |11⟩`.
pub fn singlet_state() -> [Complex64; 4] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    [
        ZERO,
        Complex64::new(s, 0.0),
        Complex64::new(-s, 0.0),
        ZERO,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_algebra() {
        let (x, y, z) = (pauli_x(), pauli_y(), pauli_z());
        assert_eq!(x * x, Mat2::identity());
        assert_eq!(y * y, Mat2::identity());
        // σ_x σ_y = i σ_z
        let iz = CMatrix(z.0.map(|r| r.map(|e| e * I)));
        assert_eq!(x * y, iz);
    }

    #[test]
    fn pauli_dot_z_is_diag() {
        assert_eq!(pauli_dot(UnitVector3::Z), Mat2::from_real_diag([1.0, -1.0]));
    }

    #[test]
    fn pauli_dot_properties() {
        let a = UnitVector3::normalize([0.3, -1.1, 0.7]).unwrap();
        let s = pauli_dot(a);
        assert!(s.hermitian_defect() == 0.0);
        assert!(s.trace().norm() < 1e-15);
        assert!((s * s).approx_eq(&Mat2::identity(), 1e-15));
    }

    #[test]
    fn kron_of_identities() {
        assert_eq!(kron(&Mat2::identity(), &Mat2::identity()), Operator4::identity());
        let zz = kron(&pauli_z(), &pauli_z());
        assert_eq!(zz, Operator4::from_real_diag([1.0, -1.0, -1.0, 1.0]));
    }
}
