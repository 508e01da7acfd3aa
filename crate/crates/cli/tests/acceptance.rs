//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use ksphere_core::bell::{self, rng, sample_unit_vector, SimConfig, UnitVector3};
use ksphere_core::chsh::{
    boole_bound_enumeration, chsh_operator, combination_values, expectation_linearity_check,
    hermitian_eigenvalues, spin_sum_spectrum, tsirelson_settings, SettingOutcomes,
};
use ksphere_core::even::{
    orientation_determinant, random_element, random_zero_defect, verify_composition_with_tol,
    Hyperbolic, KElement, Orientation, Quaternion,
};

const SQRT2: f64 = std::f64::consts::SQRT_2;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn orientation_for(i: u64) -> Orientation {
    if i.is_multiple_of(2) {
        Orientation::Positive
    } else {
        Orientation::Negative
    }
}

fn composition_law() -> Outcome {
    let start = Instant::now();
    let mut r = rng::stream(101, 0);
    let mut failures = 0u32;
    let mut worst = 0.0f64;
    for i in 0..100_000 {
        let o = orientation_for(i);
        let x = random_element(&mut r, o);
        let y = random_element(&mut r, o);
        let rep = verify_composition_with_tol(&x, &y, 1e-10).unwrap();
        let scale = rep.lhs.magnitude().max(rep.rhs.magnitude());
        worst = worst.max((rep.lhs - rep.rhs).magnitude() / scale);
        failures += u32::from(!rep.equal);
    }
    let t = start.elapsed();
    outcome(
        failures == 0 && t < Duration::from_secs(5),
        format!("100000 pairs, {failures} failures, max rel dev {worst:.2e}, {:.2} s", t.as_secs_f64()),
    )
}

fn counterexample() -> Outcome {
    let x = KElement::new(Quaternion::scalar(-1.0), Quaternion::scalar(1.0), Orientation::Positive);
    let y = KElement::new(Quaternion::scalar(1.0), Quaternion::scalar(1.0), Orientation::Positive);
    let xy = x.k_product(&y).unwrap();
    let (nx, ny, nxy) = (x.geometric_norm(), y.geometric_norm(), xy.geometric_norm());
    let geometric = nx.approx_eq(Hyperbolic::new(1.0, -1.0), 0.0, 1e-12)
        && ny.approx_eq(Hyperbolic::new(1.0, 1.0), 0.0, 1e-12)
        && xy.is_zero()
        && nxy == Hyperbolic::ZERO
        && nx * ny == Hyperbolic::ZERO;
    let (sx, sy, sxy) = (x.scalar_norm(), y.scalar_norm(), xy.scalar_norm());
    let scalar = (sx - SQRT2).abs() <= 1e-12
        && (sy - SQRT2).abs() <= 1e-12
        && (sx * sy - 2.0).abs() <= 1e-12
        && sxy == 0.0;
    outcome(
        geometric && scalar,
        format!(
            "geometric: |X|={nx} |Y|={ny} |XY|={nxy} |X||Y|={} | scalar: |X||Y|={} |XY|={sxy}",
            nx * ny,
            sx * sy
        ),
    )
}

fn positive_definiteness() -> Outcome {
    let mut r = rng::stream(103, 0);
    let mut bad = 0u32;
    for i in 0..10_000 {
        let x = random_element(&mut r, orientation_for(i));
        assert!(!x.is_zero());
        bad += u32::from(!(x.scalar_norm() > 0.0 && x.quadratic_form() != Hyperbolic::ZERO));
    }
    let zero = KElement::zero(Orientation::Positive);
    let zero_ok = zero.scalar_norm() == 0.0
        && zero.quadratic_form() == Hyperbolic::ZERO
        && zero.geometric_norm() == Hyperbolic::ZERO;
    outcome(bad == 0 && zero_ok, format!("10000 nonzero elements, {bad} violations, zero maps to zero: {zero_ok}"))
}

fn scalar_composition() -> Outcome {
    let mut r = rng::stream(104, 0);
    let mut worst = 0.0f64;
    for i in 0..10_000 {
        let o = orientation_for(i);
        let x = random_zero_defect(&mut r, o);
        let y = random_zero_defect(&mut r, o);
        let want = x.scalar_norm() * y.scalar_norm();
        let got = x.k_product(&y).unwrap().scalar_norm();
        worst = worst.max((got - want).abs() / want);
    }
    outcome(worst <= 1e-10, format!("10000 zero-defect pairs, max rel dev {worst:.2e}"))
}

fn orientation() -> Outcome {
    let det = orientation_determinant();
    outcome(det == -1.0, format!("determinant {det}"))
}

fn singlet_correlation() -> Outcome {
    let start = Instant::now();
    let mut r = rng::stream(106, 0);
    let n = 1_000_000;
    let (mut scalar, mut residual) = (0.0f64, 0.0f64);
    for i in 0..100 {
        let a = sample_unit_vector(&mut r);
        let b = sample_unit_vector(&mut r);
        let est = bell::simulate(a, b, &SimConfig::new(n, rng::derive_seed(106, i))).unwrap();
        scalar = scalar.max((est.scalar_mean + a.dot(b)).abs());
        residual = residual.max(est.bivector_residual);
    }
    let t = start.elapsed();
    outcome(
        scalar <= 4.0 * f64::EPSILON && residual <= 0.01 && t < Duration::from_secs(60),
        format!(
            "100 pairs x 1e6 trials, max |mean + a.b| {scalar:.2e}, max residual {residual:.2e}, {:.2} s",
            t.as_secs_f64()
        ),
    )
}

fn tsirelson() -> Outcome {
    let ceiling = 2.0 * SQRT2;
    let [a, a2, b, b2] = tsirelson_settings();
    let s = hermitian_eigenvalues(&chsh_operator(a, a2, b, b2)).unwrap();
    let canonical = (s[0] + ceiling).abs() <= 1e-9 && (s[3] - ceiling).abs() <= 1e-9;
    let mut r = rng::stream(107, 0);
    let mut radius = 0.0f64;
    for _ in 0..1000 {
        let q: [UnitVector3; 4] = std::array::from_fn(|_| sample_unit_vector(&mut r));
        let v = hermitian_eigenvalues(&chsh_operator(q[0], q[1], q[2], q[3])).unwrap();
        radius = radius.max(v[0].abs()).max(v[3].abs());
    }
    outcome(
        canonical && radius <= ceiling + 1e-9,
        format!("canonical extremes {:.12} {:.12}, max radius over 1000 quadruples {radius:.12}", s[0], s[3]),
    )
}

fn non_additivity() -> Outcome {
    let values = combination_values();
    let set = boole_bound_enumeration();
    let exact = set == BTreeSet::from([-2, 2]) && values.iter().all(|v| set.contains(v));
    let [a, a2, b, b2] = tsirelson_settings();
    let top = hermitian_eigenvalues(&chsh_operator(a, a2, b, b2)).unwrap()[3];
    let excluded = set.iter().all(|&v| (top - v as f64).abs() > 1e-9);
    outcome(exact && excluded, format!("16 cases give {set:?}; top eigenvalue {top:.12} not in set: {excluded}"))
}

fn spin_sum() -> Outcome {
    let s = spin_sum_spectrum(UnitVector3::X, UnitVector3::Y);
    let close = (s[0] + SQRT2).abs() <= 1e-12 && (s[1] - SQRT2).abs() <= 1e-12;
    let outside = s.iter().all(|v| [-2.0, 0.0, 2.0].iter().all(|w| (v - w).abs() > 1e-12));
    outcome(close && outside, format!("eigenvalues {:.15} {:.15}", s[0], s[1]))
}

fn expectation_linearity() -> Outcome {
    let mut r = rng::stream(110, 0);
    let mut mismatches = 0;
    for _ in 0..100 {
        let s: [UnitVector3; 4] = std::array::from_fn(|_| sample_unit_vector(&mut r));
        let hidden: Vec<UnitVector3> = (0..1000).map(|_| sample_unit_vector(&mut r)).collect();
        let sign = |x: f64| if x >= 0.0 { 1 } else { -1 };
        let rep = expectation_linearity_check(&hidden, |l| SettingOutcomes {
            a: sign(s[0].dot(*l)),
            a_prime: sign(s[1].dot(*l)),
            b: -sign(s[2].dot(*l)),
            b_prime: -sign(s[3].dot(*l)),
        })
        .unwrap();
        if !(rep.equal && rep.sum_of_expectations == rep.expectation_of_sum) {
            mismatches += 1;
        }
    }
    outcome(mismatches == 0, format!("100 configurations, {mismatches} mismatches (exact rationals)"))
}

fn light_cone() -> Outcome {
    let mut r = rng::stream(111, 0);
    let (mut outside, mut worst) = (0u32, 0.0f64);
    for i in 0..100_000 {
        let q = random_element(&mut r, orientation_for(i)).quadratic_form();
        outside += u32::from(!(q.c >= q.d.abs()));
        let root = q.sqrt().unwrap();
        worst = worst.max((root * root - q).magnitude() / q.magnitude());
    }
    outcome(
        outside == 0 && worst <= 1e-10,
        format!("100000 forms, {outside} outside the cone, max root round-trip rel dev {worst:.2e}"),
    )
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_ksphere"))
            .args(["simulate-singlet", "--seed", "7"])
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    let same = a.stdout == b.stdout && !a.stdout.is_empty();
    outcome(
        same && a.status.success() && b.status.success(),
        format!("two runs, {} bytes each, identical: {same}", a.stdout.len()),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("composition law", composition_law),
        ("counterexample replay", counterexample),
        ("positive definiteness", positive_definiteness),
        ("scalar composition", scalar_composition),
        ("orientation", orientation),
        ("singlet correlation", singlet_correlation),
        ("tsirelson spectrum", tsirelson),
        ("eigenvalue non-additivity", non_additivity),
        ("spin-sum example", spin_sum),
        ("expectation linearity", expectation_linearity),
        ("light-cone property", light_cone),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        let mark = if o.pass { "PASS" } else { "FAIL" };
        println!("{mark} {:>2} {name}: {}", i + 1, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
