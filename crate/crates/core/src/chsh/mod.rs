//! Quantum-side checks on the CHSH setup: Pauli operators, the four-term
//! CHSH operator and its spectrum, singlet expectations, the ±1 outcome
//! combination, and linearity of finite-sample expectations.

mod jacobi;
mod matrix;

use std::collections::BTreeSet;

use num_rational::Ratio;
use thiserror::Error;

use crate::bell::UnitVector3;

pub use jacobi::{
    hermitian_eigen, hermitian_eigenvalues, jacobi_symmetric, Eigen4, HERMITIAN_TOL, MAX_SWEEPS,
    OFF_DIAGONAL_TOL,
};
pub use matrix::{kron, pauli_dot, pauli_x, pauli_y, pauli_z, singlet_state, CMatrix, Mat2, Operator4};

/// Tolerance for matching eigenvalues against outcome combinations.
pub const SPECTRUM_MATCH_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ChshError {
    #[error("matrix is not Hermitian (defect {0:e})")]
    NotHermitian(f64),
    #[error("Jacobi iteration did not converge in {0} sweeps")]
    NoConvergence(usize),
    #[error("sample is empty")]
    EmptySample,
    #[error("outcome {0} is not ±1")]
    InvalidOutcome(i8),
}

/// Eigenvalues of a 2×2 Hermitian matrix, ascending, in closed form.
pub fn hermitian_eigenvalues_2x2(m: &Mat2) -> Result<[f64; 2], ChshError> {
    let defect = m.hermitian_defect();
    if defect > HERMITIAN_TOL * m.frobenius_norm().max(1.0) {
        return Err(ChshError::NotHermitian(defect));
    }
    let (p, q) = (m.0[0][0].re, m.0[1][1].re);
    let mean = 0.5 * (p + q);
    let r = (0.25 * (p - q) * (p - q) + m.0[0][1].norm_sqr()).sqrt();
    Ok([mean - r, mean + r])
}

/// Spectrum of `σ·a + σ·b`; analytically `±|a + b|`.
pub fn spin_sum_spectrum(a: UnitVector3, b: UnitVector3) -> [f64; 2] {
    hermitian_eigenvalues_2x2(&(pauli_dot(a) + pauli_dot(b)))
        .expect("sum of Pauli combinations is Hermitian")
}

/// `σa⊗σb + σa⊗σb′ + σa′⊗σb − σa′⊗σb′`.
pub fn chsh_operator(
    a: UnitVector3,
    a_prime: UnitVector3,
    b: UnitVector3,
    b_prime: UnitVector3,
) -> Operator4 {
    let (sa, sa2) = (pauli_dot(a), pauli_dot(a_prime));
    let (sb, sb2) = (pauli_dot(b), pauli_dot(b_prime));
    kron(&sa, &sb) + kron(&sa, &sb2) + kron(&sa2, &sb) - kron(&sa2, &sb2)
}

/// Settings that saturate the CHSH operator norm: `a = x̂`, `a′ = ŷ`,
/// `b = (x̂ + ŷ)/√2`, `b′ = (x̂ − ŷ)/√2`.
pub fn tsirelson_settings() -> [UnitVector3; 4] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    [
        UnitVector3::X,
        UnitVector3::Y,
        UnitVector3::normalize([s, s, 0.0]).unwrap(),
        UnitVector3::normalize([s, -s, 0.0]).unwrap(),
    ]
}

/// `⟨ψ|σa ⊗ σb|ψ⟩` for the singlet state.
pub fn singlet_expectation(a: UnitVector3, b: UnitVector3) -> f64 {
    kron(&pauli_dot(a), &pauli_dot(b))
        .expectation(&singlet_state())
        .re
}

/// `A B + A B′ + A′ B − A′ B′` for `±1` outcomes.
pub fn chsh_combination(a: i8, a_prime: i8, b: i8, b_prime: i8) -> i8 {
    a * b + a * b_prime + a_prime * b - a_prime * b_prime
}

/// The combination over all 16 assignments in `{±1}⁴`, in the order
/// `(A, A′, B, B′)` counting from all `+1` with `B′` varying fastest.
pub fn combination_values() -> [i8; 16] {
    let mut out = [0; 16];
    for (i, v) in out.iter_mut().enumerate() {
        let s = |bit: usize| if i & (1 << bit) == 0 { 1 } else { -1 };
        *v = chsh_combination(s(3), s(2), s(1), s(0));
    }
    out
}

/// Set of values the combination takes over `{±1}⁴`.
pub fn boole_bound_enumeration() -> BTreeSet<i8> {
    combination_values().into_iter().collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdditivityReport {
    /// Spectrum of the CHSH operator, ascending.
    pub spectrum: [f64; 4],
    pub combination_values: [i8; 16],
    pub combination_set: BTreeSet<i8>,
    pub spectral_radius: f64,
    /// Whether the largest-magnitude eigenvalue equals some combination value.
    pub extreme_in_combination_set: bool,
    /// Whether any eigenvalue equals some combination value.
    pub overlap: bool,
}

fn in_set(x: f64, set: &BTreeSet<i8>) -> bool {
    set.iter().any(|&v| (x - v as f64).abs() <= SPECTRUM_MATCH_TOL)
}

pub fn eigenvalue_additivity_report(
    a: UnitVector3,
    a_prime: UnitVector3,
    b: UnitVector3,
    b_prime: UnitVector3,
) -> Result<AdditivityReport, ChshError> {
    let spectrum = hermitian_eigenvalues(&chsh_operator(a, a_prime, b, b_prime))?;
    let combination_values = combination_values();
    let combination_set: BTreeSet<i8> = combination_values.iter().copied().collect();
    let extreme = if spectrum[0].abs() > spectrum[3].abs() {
        spectrum[0]
    } else {
        spectrum[3]
    };
    Ok(AdditivityReport {
        spectrum,
        spectral_radius: extreme.abs(),
        extreme_in_combination_set: in_set(extreme, &combination_set),
        overlap: spectrum.iter().any(|&x| in_set(x, &combination_set)),
        combination_values,
        combination_set,
    })
}

/// Outcomes of the four settings for a single hidden state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SettingOutcomes {
    pub a: i8,
    pub a_prime: i8,
    pub b: i8,
    pub b_prime: i8,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearityReport {
    pub n: usize,
    /// `E(a,b), E(a,b′), E(a′,b), E(a′,b′)` as exact sample averages.
    pub correlations: [Ratio<i64>; 4],
    /// `E(a,b) + E(a,b′) + E(a′,b) − E(a′,b′)`.
    pub sum_of_expectations: Ratio<i64>,
    /// Sample average of the per-state combination.
    pub expectation_of_sum: Ratio<i64>,
    pub equal: bool,
}

impl LinearityReport {
    pub fn difference(&self) -> Ratio<i64> {
        self.sum_of_expectations - self.expectation_of_sum
    }
}

/// Evaluates both sides of the expectation-additivity identity as exact
/// rational averages over one shared sample of hidden states.
pub fn expectation_linearity_check<L, F>(sample: &[L], outcomes: F) -> Result<LinearityReport, ChshError>
where
    F: Fn(&L) -> SettingOutcomes,
{
    if sample.is_empty() {
        return Err(ChshError::EmptySample);
    }
    let n = sample.len() as i64;
    let mut sums = [0i64; 4];
    let mut combo = 0i64;
    for s in sample {
        let o = outcomes(s);
        for v in [o.a, o.a_prime, o.b, o.b_prime] {
            if v != 1 && v != -1 {
                return Err(ChshError::InvalidOutcome(v));
            }
        }
        sums[0] += i64::from(o.a * o.b);
        sums[1] += i64::from(o.a * o.b_prime);
        sums[2] += i64::from(o.a_prime * o.b);
        sums[3] += i64::from(o.a_prime * o.b_prime);
        combo += i64::from(chsh_combination(o.a, o.a_prime, o.b, o.b_prime));
    }
    let correlations = sums.map(|s| Ratio::new(s, n));
    let sum_of_expectations = correlations[0] + correlations[1] + correlations[2] - correlations[3];
    let expectation_of_sum = Ratio::new(combo, n);
    Ok(LinearityReport {
        n: sample.len(),
        correlations,
        sum_of_expectations,
        expectation_of_sum,
        equal: sum_of_expectations == expectation_of_sum,
    })
}
