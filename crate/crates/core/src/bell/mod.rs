//! Monte Carlo simulation of the 3-sphere singlet model.
//!
//! Each trial draws the orientation `λ = ±1` with a fair coin, records the
//! outcomes `A = λ`, `B = −λ`, and forms the trial quaternion from the
//! detector bivectors `D(a) = I₃a`, `D(b) = I₃b`: `D(a)D(b)` when `λ = +1`,
//! `D(b)D(a)` when `λ = −1`. The correlation estimate is the scalar part of
//! the averaged trial quaternion; the residual non-scalar part and the plain
//! product moment of `(A, B)` are reported next to it.
//!
//! Trials are split into fixed-size shards. Shard `k` of a run with seed `s`
//! draws from stream `(s, k)` and shard results are combined in shard order,
//! so the estimate is bit-identical for any worker count.

pub mod rng;

use std::io::Write;

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use thiserror::Error;

use crate::even::{KElement, Orientation, Quaternion};

/// Trials per shard.
pub const SHARD_SIZE: u64 = 1 << 16;

/// Tolerance on `|x|² − 1` accepted by [`UnitVector3::new`].
pub const UNIT_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum BellError {
    #[error("vector has squared norm {0}, expected 1")]
    NotUnit(f64),
    #[error("trial count must be at least 1")]
    ZeroTrials,
    #[error("failed to build worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVector3([f64; 3]);

impl UnitVector3 {
    pub const X: UnitVector3 = UnitVector3([1.0, 0.0, 0.0]);
    pub const Y: UnitVector3 = UnitVector3([0.0, 1.0, 0.0]);
    pub const Z: UnitVector3 = UnitVector3([0.0, 0.0, 1.0]);

    pub fn new(x: f64, y: f64, z: f64) -> Result<Self, BellError> {
        let n2 = x * x + y * y + z * z;
        if !((n2 - 1.0).abs() <= UNIT_TOL) {
            return Err(BellError::NotUnit(n2));
        }
        Ok(Self([x, y, z]))
    }

    /// Rescales a nonzero finite vector onto the unit sphere.
    pub fn normalize(v: [f64; 3]) -> Option<Self> {
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if !(n.is_finite() && n > 0.0) {
            return None;
        }
        Some(Self([v[0] / n, v[1] / n, v[2] / n]))
    }

    pub fn as_array(self) -> [f64; 3] {
        self.0
    }

    pub fn x(self) -> f64 {
        self.0[0]
    }
    pub fn y(self) -> f64 {
        self.0[1]
    }
    pub fn z(self) -> f64 {
        self.0[2]
    }

    pub fn dot(self, other: Self) -> f64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    pub fn cross(self, other: Self) -> [f64; 3] {
        let (a, b) = (self.0, other.0);
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    }

    pub fn neg(self) -> Self {
        Self([-self.0[0], -self.0[1], -self.0[2]])
    }
}

/// Uniform point on the 2-sphere from three normalized Gaussian draws.
pub fn sample_unit_vector<R: Rng + ?Sized>(rng: &mut R) -> UnitVector3 {
    loop {
        let v = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        if let Some(u) = UnitVector3::normalize(v) {
            return u;
        }
    }
}

/// Detector bivector `D(a) = I₃a`, as a pure quaternion in the standard basis.
pub fn detector_bivector(a: UnitVector3) -> KElement {
    KElement::new(Quaternion::pure(a.0), Quaternion::ZERO, Orientation::Positive)
}

/// Outcomes `(A, B) = (λ, −λ)`, the scalar limits of `−D(a)L(a, λ)` and
/// `L(b, λ)D(b)`.
pub fn measurement_outcomes(lambda: Orientation) -> (i8, i8) {
    let l = lambda.as_i8();
    (l, -l)
}

/// The trial quaternion: `D(a)D(b)` for `λ = +1`, `D(b)D(a)` for `λ = −1`.
/// Returned in the standard basis so trials of both orientations can be
/// averaged together.
pub fn trial_product(a: UnitVector3, b: UnitVector3, lambda: Orientation) -> KElement {
    let da = Quaternion::pure(a.0);
    let db = Quaternion::pure(b.0);
    let q = match lambda {
        Orientation::Positive => da * db,
        Orientation::Negative => db * da,
    };
    KElement::new(q, Quaternion::ZERO, Orientation::Positive)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialRecord {
    pub lambda: Orientation,
    pub a: i8,
    pub b: i8,
    pub q: KElement,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub trials: u64,
    pub seed: u64,
    /// Worker threads; `0` or `1` runs on the calling thread.
    pub workers: usize,
}

impl SimConfig {
    pub fn new(trials: u64, seed: u64) -> Self {
        Self {
            trials,
            seed,
            workers: 1,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationEstimate {
    pub n: u64,
    /// Scalar part of the averaged trial quaternion.
    pub scalar_mean: f64,
    /// Euclidean norm of the averaged non-scalar part.
    pub bivector_residual: f64,
    /// Standard error of the averaged trial quaternion,
    /// `√(Σ_k Var(q_k) / n)`.
    pub stderr: f64,
    pub mean_q: [f64; 8],
    /// `mean(A·B)` over trials.
    pub product_moment: f64,
    pub mean_a: f64,
    pub mean_b: f64,
    pub plus_count: u64,
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    #[inline]
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn merge(&mut self, other: &Self) {
        self.add(other.sum);
        self.add(other.comp);
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[derive(Debug, Clone, Default)]
struct ShardTotals {
    sum: [CompensatedSum; 8],
    sum_sq: [CompensatedSum; 8],
    plus: u64,
    count: u64,
    // Σ A·B; an integer, kept exact.
    ab: i64,
}

impl ShardTotals {
    fn merge(&mut self, other: &Self) {
        for k in 0..8 {
            self.sum[k].merge(&other.sum[k]);
            self.sum_sq[k].merge(&other.sum_sq[k]);
        }
        self.plus += other.plus;
        self.count += other.count;
        self.ab += other.ab;
    }
}

fn shard_count(trials: u64) -> u64 {
    trials.div_ceil(SHARD_SIZE)
}

fn run_shard<F>(a: UnitVector3, b: UnitVector3, cfg: &SimConfig, shard: u64, mut on_trial: F) -> ShardTotals
where
    F: FnMut(u64, &TrialRecord),
{
    let start = shard * SHARD_SIZE;
    let end = (start + SHARD_SIZE).min(cfg.trials);
    let mut rng = rng::stream(cfg.seed, shard);
    let mut t = ShardTotals::default();
    for i in start..end {
        let lambda = if rng.random::<bool>() {
            Orientation::Positive
        } else {
            Orientation::Negative
        };
        let (oa, ob) = measurement_outcomes(lambda);
        let q = trial_product(a, b, lambda);
        let c = q.coords();
        for k in 0..8 {
            t.sum[k].add(c[k]);
            t.sum_sq[k].add(c[k] * c[k]);
        }
        t.plus += u64::from(lambda == Orientation::Positive);
        t.count += 1;
        t.ab += i64::from(oa * ob);
        on_trial(
            i,
            &TrialRecord {
                lambda,
                a: oa,
                b: ob,
                q,
            },
        );
    }
    t
}

fn finish(totals: &ShardTotals) -> CorrelationEstimate {
    let n = totals.count as f64;
    let mut mean_q = [0.0; 8];
    let mut var_total = 0.0;
    for k in 0..8 {
        mean_q[k] = totals.sum[k].value() / n;
        var_total += (totals.sum_sq[k].value() / n - mean_q[k] * mean_q[k]).max(0.0);
    }
    let bivector_residual = mean_q[1..].iter().map(|v| v * v).sum::<f64>().sqrt();
    let minus = totals.count - totals.plus;
    let mean_a = (totals.plus as f64 - minus as f64) / n;
    CorrelationEstimate {
        n: totals.count,
        scalar_mean: mean_q[0],
        bivector_residual,
        stderr: (var_total / n).sqrt(),
        mean_q,
        product_moment: totals.ab as f64 / n,
        mean_a,
        mean_b: -mean_a,
        plus_count: totals.plus,
    }
}

/// Runs `cfg.trials` singlet trials for settings `(a, b)`.
pub fn simulate(a: UnitVector3, b: UnitVector3, cfg: &SimConfig) -> Result<CorrelationEstimate, BellError> {
    if cfg.trials == 0 {
        return Err(BellError::ZeroTrials);
    }
    let shards = shard_count(cfg.trials);
    let parts: Vec<ShardTotals> = if cfg.workers <= 1 {
        (0..shards).map(|k| run_shard(a, b, cfg, k, |_, _| {})).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| BellError::Pool(e.to_string()))?;
        pool.install(|| {
            (0..shards)
                .into_par_iter()
                .map(|k| run_shard(a, b, cfg, k, |_, _| {}))
                .collect()
        })
    };
    let mut totals = ShardTotals::default();
    for p in &parts {
        totals.merge(p);
    }
    Ok(finish(&totals))
}

/// Sequential run that hands every trial to `on_trial`. Produces the same
/// estimate as [`simulate`] for the same seed.
pub fn simulate_with_records<F>(
    a: UnitVector3,
    b: UnitVector3,
    cfg: &SimConfig,
    mut on_trial: F,
) -> Result<CorrelationEstimate, BellError>
where
    F: FnMut(u64, &TrialRecord),
{
    if cfg.trials == 0 {
        return Err(BellError::ZeroTrials);
    }
    let mut totals = ShardTotals::default();
    for k in 0..shard_count(cfg.trials) {
        totals.merge(&run_shard(a, b, cfg, k, &mut on_trial));
    }
    Ok(finish(&totals))
}

pub const TRIAL_CSV_HEADER: [&str; 12] = [
    "trial", "lambda", "A", "B", "q0", "q1", "q2", "q3", "q4", "q5", "q6", "q7",
];

/// Writes one CSV row per trial (`trial,lambda,A,B,q0..q7`).
pub fn write_trials_csv<W: Write>(
    out: W,
    a: UnitVector3,
    b: UnitVector3,
    cfg: &SimConfig,
) -> Result<CorrelationEstimate, BellError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TRIAL_CSV_HEADER)?;
    let mut err = None;
    let est = simulate_with_records(a, b, cfg, |i, rec| {
        if err.is_some() {
            return;
        }
        let mut row = Vec::with_capacity(12);
        row.push(i.to_string());
        row.push(rec.lambda.as_i8().to_string());
        row.push(rec.a.to_string());
        row.push(rec.b.to_string());
        row.extend(rec.q.coords().iter().map(|c| c.to_string()));
        if let Err(e) = w.write_record(&row) {
            err = Some(e);
        }
    })?;
    if let Some(e) = err {
        return Err(e.into());
    }
    w.flush()?;
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multivector::Multivector16;

    fn unit(v: [f64; 3]) -> UnitVector3 {
        UnitVector3::normalize(v).unwrap()
    }

    #[test]
    fn non_unit_rejected() {
        assert!(matches!(UnitVector3::new(1.0, 1.0, 0.0), Err(BellError::NotUnit(_))));
        assert!(UnitVector3::new(0.6, 0.8, 0.0).is_ok());
        assert!(UnitVector3::normalize([0.0; 3]).is_none());
    }

    #[test]
    fn detector_of_x_is_e2e3() {
        let d = detector_bivector(UnitVector3::X).embed();
        let e23 = Multivector16::basis_vector(2).unwrap() * Multivector16::basis_vector(3).unwrap();
        assert_eq!(d, e23);
    }

    #[test]
    fn detector_squares_to_minus_one() {
        let a = unit([0.3, -0.4, 0.5]);
        let d = detector_bivector(a);
        let sq = d.k_product(&d).unwrap();
        assert!(sq.approx_eq(&KElement::scalar(-1.0, Orientation::Positive), 1e-15, 1e-15));
    }

    #[test]
    fn outcome_table() {
        assert_eq!(measurement_outcomes(Orientation::Positive), (1, -1));
        assert_eq!(measurement_outcomes(Orientation::Negative), (-1, 1));
    }

    #[test]
    fn trial_product_examples() {
        let q = trial_product(UnitVector3::X, UnitVector3::Y, Orientation::Positive);
        let e23 = Multivector16::basis_vector(2).unwrap() * Multivector16::basis_vector(3).unwrap();
        let e31 = Multivector16::basis_vector(3).unwrap() * Multivector16::basis_vector(1).unwrap();
        assert_eq!(q.embed(), e23 * e31);
        assert_eq!(q.q_r.g, 0.0);

        let a = unit([1.0, 2.0, 3.0]);
        for l in [Orientation::Positive, Orientation::Negative] {
            let q = trial_product(a, a, l);
            assert_eq!(q.coords()[0], -a.dot(a));
        }
    }

    #[test]
    fn branches_share_scalar_and_cancel_bivectors() {
        let a = unit([0.2, -0.9, 0.4]);
        let b = unit([-0.5, 0.1, 0.7]);
        let p = trial_product(a, b, Orientation::Positive);
        let m = trial_product(a, b, Orientation::Negative);
        assert_eq!(p.q_r.g, -a.dot(b));
        assert_eq!(m.q_r.g, -a.dot(b));
        let sum = p.try_add(&m).unwrap();
        assert!(sum.approx_eq(&KElement::scalar(-2.0 * a.dot(b), Orientation::Positive), 0.0, 1e-15));
    }

    #[test]
    fn zero_trials_rejected() {
        let cfg = SimConfig::new(0, 1);
        assert!(matches!(
            simulate(UnitVector3::X, UnitVector3::Y, &cfg),
            Err(BellError::ZeroTrials)
        ));
    }

    #[test]
    fn parallel_matches_sequential() {
        let a = unit([0.1, 0.2, 0.3]);
        let b = unit([-0.3, 0.2, 0.9]);
        let cfg = SimConfig::new(3 * SHARD_SIZE + 17, 99);
        let seq = simulate(a, b, &cfg).unwrap();
        let par = simulate(a, b, &cfg.with_workers(4)).unwrap();
        let rec = simulate_with_records(a, b, &cfg, |_, _| {}).unwrap();
        assert_eq!(seq, par);
        assert_eq!(seq, rec);
    }

    #[test]
    fn csv_dump_has_one_row_per_trial() {
        let mut buf = Vec::new();
        let cfg = SimConfig::new(10, 4);
        let est = write_trials_csv(&mut buf, UnitVector3::X, UnitVector3::Z, &cfg).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 11);
        assert_eq!(lines[0], "trial,lambda,A,B,q0,q1,q2,q3,q4,q5,q6,q7");
        let plus = lines[1..].iter().filter(|l| l.split(',').nth(1) == Some("1")).count();
        assert_eq!(plus as u64, est.plus_count);
    }
}
