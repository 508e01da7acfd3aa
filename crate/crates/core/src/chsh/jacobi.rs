//! Cyclic Jacobi eigensolver for small Hermitian matrices.
//!
//! A 4×4 Hermitian `H = A + iB` is embedded as the real symmetric 8×8
//! `[[A, −B], [B, A]]`, whose spectrum is that of `H` with every eigenvalue
//! doubled. An eigenvector `(x, y)` of the embedding gives the complex
//! eigenvector `x + iy` of `H`.

use num_complex::Complex64;

use super::matrix::Operator4;
use super::ChshError;

/// Off-diagonal Frobenius threshold, relative to `max(1, ‖M‖_F)`.
pub const OFF_DIAGONAL_TOL: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;
/// Hermiticity tolerance on the input.
pub const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigen4 {
    /// Ascending.
    pub values: [f64; 4],
    /// `vectors[k]` is a unit eigenvector for `values[k]`. Vectors for a
    /// repeated eigenvalue are not guaranteed to be orthogonal.
    pub vectors: [[Complex64; 4]; 4],
    pub sweeps: usize,
}

fn off_diagonal<const M: usize>(a: &[[f64; M]; M]) -> f64 {
    let mut s = 0.0;
    for (i, row) in a.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i != j {
                s += v * v;
            }
        }
    }
    s.sqrt()
}

/// Eigen-decomposition of a real symmetric matrix. Returns eigenvalues (not
/// sorted), the matrix whose columns are the eigenvectors, and the number of
/// sweeps used.
pub fn jacobi_symmetric<const M: usize>(
    mut a: [[f64; M]; M],
) -> Result<([f64; M], [[f64; M]; M], usize), ChshError> {
    let mut v = [[0.0; M]; M];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let frob = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    let threshold = OFF_DIAGONAL_TOL * frob.max(1.0);

    let mut sweeps = 0;
    while off_diagonal(&a) > threshold {
        if sweeps == MAX_SWEEPS {
            return Err(ChshError::NoConvergence(MAX_SWEEPS));
        }
        sweeps += 1;
        for p in 0..M {
            for q in p + 1..M {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..M {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..M {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let vkp = row[p];
                    let vkq = row[q];
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut values = [0.0; M];
    for (i, val) in values.iter_mut().enumerate() {
        *val = a[i][i];
    }
    Ok((values, v, sweeps))
}

pub fn hermitian_eigen(m: &Operator4) -> Result<Eigen4, ChshError> {
    let defect = m.hermitian_defect();
    if defect > HERMITIAN_TOL * m.frobenius_norm().max(1.0) {
        return Err(ChshError::NotHermitian(defect));
    }
    let mut r = [[0.0; 8]; 8];
    for i in 0..4 {
        for j in 0..4 {
            // symmetrize so tiny Hermiticity defects do not leak in
            let z = 0.5 * (m.0[i][j] + m.0[j][i].conj());
            r[i][j] = z.re;
            r[i + 4][j + 4] = z.re;
            r[i][j + 4] = -z.im;
            r[i + 4][j] = z.im;
        }
    }
    let (vals, vecs, sweeps) = jacobi_symmetric(r)?;
    let mut order: Vec<usize> = (0..8).collect();
    order.sort_by(|&x, &y| vals[x].total_cmp(&vals[y]));

    let mut values = [0.0; 4];
    let mut vectors = [[Complex64::new(0.0, 0.0); 4]; 4];
    for k in 0..4 {
        let (lo, hi) = (order[2 * k], order[2 * k + 1]);
        values[k] = 0.5 * (vals[lo] + vals[hi]);
        let mut z = [Complex64::new(0.0, 0.0); 4];
        for i in 0..4 {
            z[i] = Complex64::new(vecs[i][lo], vecs[i + 4][lo]);
        }
        let n = z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        vectors[k] = z.map(|c| c / n);
    }
    Ok(Eigen4 {
        values,
        vectors,
        sweeps,
    })
}

pub fn hermitian_eigenvalues(m: &Operator4) -> Result<[f64; 4], ChshError> {
    hermitian_eigen(m).map(|e| e.values)
}
