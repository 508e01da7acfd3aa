//! The verification campaigns. Each returns its check records; randomness is
//! drawn from a per-campaign stream of the run seed so a campaign produces
//! the same records alone or inside `all`.

use std::collections::BTreeSet;
use std::io::BufWriter;
use std::path::Path;

use anyhow::Context;
use ksphere_core::bell::{self, rng, sample_unit_vector, SimConfig, UnitVector3};
use ksphere_core::chsh::{
    boole_bound_enumeration, chsh_operator, eigenvalue_additivity_report,
    expectation_linearity_check, hermitian_eigenvalues, singlet_expectation, spin_sum_spectrum,
    tsirelson_settings, SettingOutcomes,
};
use ksphere_core::even::{
    orientation_determinant, random_element, random_zero_defect, verify_composition_with_tol,
    Hyperbolic, KElement, Orientation, Quaternion,
};
use ksphere_core::multivector::{Blade, Multivector16, DIM};
use rand::Rng;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::report::Check;

const ALGEBRA_STREAM: u64 = 1;
const NORMS_STREAM: u64 = 2;
const SINGLET_STREAM: u64 = 3;
const CHSH_STREAM: u64 = 4;

const PRODUCT_TOL: f64 = 1e-12;
const ROOT_TOL: f64 = 1e-10;
const SPECTRUM_TOL: f64 = 1e-9;
const SPIN_SUM_TOL: f64 = 1e-12;
const SCALAR_CORRELATOR_TOL: f64 = 4.0 * f64::EPSILON;
const QUANTUM_TOL: f64 = 1e-12;
const RANDOM_QUADRUPLES: usize = 1000;
const LINEARITY_CONFIGURATIONS: usize = 100;
const LINEARITY_SAMPLE: usize = 1000;

fn orientation_for(i: u64) -> Orientation {
    if i.is_multiple_of(2) {
        Orientation::Positive
    } else {
        Orientation::Negative
    }
}

fn hyperbolic_json(h: Hyperbolic) -> Value {
    json!([h.c, h.d])
}

/// Largest coefficient difference, relative to `max(1, ‖a‖∞, ‖b‖∞)`.
fn deviation(a: &Multivector16, b: &Multivector16) -> f64 {
    let diff = (*a - *b).max_abs();
    diff / a.max_abs().max(b.max_abs()).max(1.0)
}

fn random_multivector<R: Rng>(rng: &mut R, even_only: bool) -> Multivector16 {
    let mut c = [0.0; DIM];
    for b in Blade::all() {
        if !even_only || b.is_even() {
            c[b.index()] = rng.random_range(-1.0..1.0);
        }
    }
    Multivector16::from_coeffs(c)
}

fn max_check(name: &str, anchor: &str, worst: f64, samples: u64, tol: f64) -> Check {
    Check::new(
        name,
        anchor,
        worst <= tol,
        json!({ "samples": samples, "max_deviation": worst }),
        json!({ "max_deviation": 0.0 }),
        Some(tol),
    )
}

pub fn verify_algebra(cfg: &RunConfig) -> Vec<Check> {
    let mut rng = rng::stream(cfg.seed, ALGEBRA_STREAM);
    let n = cfg.trials;
    let mut checks = Vec::new();

    let one = Multivector16::scalar(1.0);
    let eps = Multivector16::pseudoscalar();
    let squares: Vec<f64> = (1..=4)
        .map(|i| {
            let e = Multivector16::basis_vector(i).unwrap();
            (e * e).scalar_part()
        })
        .chain(std::iter::once((eps * eps).scalar_part()))
        .collect();
    let squares_ok = (1..=4).all(|i| {
        let e = Multivector16::basis_vector(i).unwrap();
        e * e == one
    }) && eps * eps == one;
    checks.push(Check::new(
        "generators and pseudoscalar square to +1",
        "plumbing",
        squares_ok,
        json!(squares),
        json!([1.0, 1.0, 1.0, 1.0, 1.0]),
        Some(0.0),
    ));

    let mut anticommute = true;
    for i in 1..=4 {
        for j in 1..=4 {
            if i != j {
                let ei = Multivector16::basis_vector(i).unwrap();
                let ej = Multivector16::basis_vector(j).unwrap();
                anticommute &= ei * ej == -(ej * ei);
            }
        }
    }
    checks.push(Check::new(
        "distinct generators anticommute",
        "plumbing",
        anticommute,
        anticommute,
        true,
        Some(0.0),
    ));

    checks.push(Check::new(
        "pseudoscalar is its own reverse",
        "plumbing",
        eps.reverse() == eps,
        json!(eps.reverse().get(Blade::PSEUDOSCALAR)),
        json!(1.0),
        Some(0.0),
    ));

    let i3 = Multivector16::i3();
    let anti = i3 * eps == -(eps * i3);
    checks.push(Check::new(
        "I3 anticommutes with the pseudoscalar",
        "plumbing",
        anti,
        json!((i3 * eps + eps * i3).max_abs()),
        json!(0.0),
        Some(0.0),
    ));

    let (mut assoc, mut rev, mut central, mut grades) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..n {
        let a = random_multivector(&mut rng, false);
        let b = random_multivector(&mut rng, false);
        let c = random_multivector(&mut rng, false);
        assoc = assoc.max(deviation(&((a * b) * c), &(a * (b * c))));
        rev = rev.max(deviation(&(a * b).reverse(), &(b.reverse() * a.reverse())));
        let mut sum = Multivector16::zero();
        for k in 0..=4 {
            sum += a.grade_projection(k).unwrap();
        }
        grades = grades.max(deviation(&sum, &a));
        let x = random_multivector(&mut rng, true);
        central = central.max(deviation(&(eps * x), &(x * eps)));
    }
    checks.push(max_check("geometric product is associative", "plumbing", assoc, n, PRODUCT_TOL));
    checks.push(max_check("reverse is an anti-automorphism", "plumbing", rev, n, PRODUCT_TOL));
    checks.push(max_check("grade projections sum to the element", "plumbing", grades, n, 0.0));
    checks.push(max_check("pseudoscalar is central on the even part", "plumbing", central, n, 0.0));

    let mut embed = 0.0f64;
    for i in 0..n {
        let o = orientation_for(i);
        let x = random_element(&mut rng, o);
        let y = random_element(&mut rng, o);
        let native = x.k_product(&y).unwrap().embed();
        embed = embed.max(deviation(&native, &(x.embed() * y.embed())));
    }
    checks.push(max_check(
        "quaternion-pair product matches the embedded product",
        "plumbing",
        embed,
        n,
        PRODUCT_TOL,
    ));
    checks
}

pub fn verify_norms(cfg: &RunConfig) -> Vec<Check> {
    let mut rng = rng::stream(cfg.seed, NORMS_STREAM);
    let n = cfg.trials;
    let tol = cfg.tolerance;
    let mut checks = Vec::new();

    let (mut failures, mut worst) = (0u64, 0.0f64);
    for i in 0..n {
        let o = orientation_for(i);
        let x = random_element(&mut rng, o);
        let y = random_element(&mut rng, o);
        let rep = verify_composition_with_tol(&x, &y, tol).unwrap();
        let scale = rep.lhs.magnitude().max(rep.rhs.magnitude());
        worst = worst.max((rep.lhs - rep.rhs).magnitude() / scale);
        failures += u64::from(!rep.equal);
    }
    checks.push(Check::new(
        "geometric norm composes",
        "composition-law",
        failures == 0,
        json!({ "pairs": n, "failures": failures, "max_relative_deviation": worst }),
        json!({ "failures": 0 }),
        Some(tol),
    ));

    let mut bad = 0u64;
    for i in 0..n {
        let x = random_element(&mut rng, orientation_for(i));
        if x.is_zero() {
            continue;
        }
        bad += u64::from(!(x.scalar_norm() > 0.0 && x.quadratic_form() != Hyperbolic::ZERO));
    }
    let zero = KElement::zero(Orientation::Positive);
    let zero_ok = zero.scalar_norm() == 0.0 && zero.quadratic_form() == Hyperbolic::ZERO;
    checks.push(Check::new(
        "norms are positive definite",
        "positive-definiteness",
        bad == 0 && zero_ok,
        json!({ "samples": n, "violations": bad, "zero_maps_to_zero": zero_ok }),
        json!({ "violations": 0, "zero_maps_to_zero": true }),
        None,
    ));

    let (mut failures, mut worst) = (0u64, 0.0f64);
    for i in 0..n {
        let o = orientation_for(i);
        let x = random_zero_defect(&mut rng, o);
        let y = random_zero_defect(&mut rng, o);
        let want = x.scalar_norm() * y.scalar_norm();
        let got = x.k_product(&y).unwrap().scalar_norm();
        let dev = (got - want).abs() / want;
        worst = worst.max(dev);
        failures += u64::from(dev > tol);
    }
    checks.push(Check::new(
        "scalar norm composes on zero-defect pairs",
        "scalar-composition",
        failures == 0,
        json!({ "pairs": n, "failures": failures, "max_relative_deviation": worst }),
        json!({ "failures": 0 }),
        Some(tol),
    ));

    let (mut outside, mut root_fail, mut norm_fail, mut worst_root) = (0u64, 0u64, 0u64, 0.0f64);
    for i in 0..n {
        let x = random_element(&mut rng, orientation_for(i));
        let q = x.quadratic_form();
        outside += u64::from(!q.in_future_cone());
        match q.sqrt() {
            Ok(r) => {
                let back = r * r;
                worst_root = worst_root.max((back - q).magnitude() / q.magnitude());
                root_fail += u64::from(!r.in_future_cone() || !back.approx_eq(q, ROOT_TOL, 0.0));
                norm_fail += u64::from(!x.geometric_norm().approx_eq(r, tol, 0.0));
            }
            Err(_) => root_fail += 1,
        }
    }
    checks.push(Check::new(
        "quadratic forms lie in the light cone",
        "light-cone",
        outside == 0,
        json!({ "samples": n, "outside": outside }),
        json!({ "outside": 0 }),
        Some(0.0),
    ));
    checks.push(Check::new(
        "principal square root round-trips",
        "principal-root",
        root_fail == 0,
        json!({ "samples": n, "failures": root_fail, "max_relative_deviation": worst_root }),
        json!({ "failures": 0 }),
        Some(ROOT_TOL),
    ));
    checks.push(Check::new(
        "geometric norm is the principal root of the quadratic form",
        "principal-root",
        norm_fail == 0,
        json!({ "samples": n, "failures": norm_fail }),
        json!({ "failures": 0 }),
        Some(tol),
    ));

    let mut off_sphere = 0u64;
    for i in 0..n {
        let o = orientation_for(i);
        let x = random_zero_defect(&mut rng, o);
        let y = random_zero_defect(&mut rng, o);
        let x = x.scale(1.0 / x.scalar_norm());
        let y = y.scale(1.0 / y.scalar_norm());
        let xy = x.k_product(&y).unwrap();
        for e in [x, y, xy] {
            off_sphere += u64::from(!e.is_on_seven_sphere(1.0, tol).unwrap());
        }
    }
    checks.push(Check::new(
        "unit zero-defect elements and their products lie on the 7-sphere",
        "seven-sphere",
        off_sphere == 0,
        json!({ "pairs": n, "off_sphere": off_sphere }),
        json!({ "off_sphere": 0 }),
        Some(tol),
    ));

    let det = orientation_determinant();
    checks.push(Check::new(
        "orientation change has determinant -1",
        "orientation",
        det == -1.0,
        json!(det),
        json!(-1.0),
        Some(0.0),
    ));
    checks
}

fn counterexample_pair(o: Orientation) -> (KElement, KElement) {
    let x = KElement::new(Quaternion::scalar(-1.0), Quaternion::scalar(1.0), Orientation::Positive);
    let y = KElement::new(Quaternion::scalar(1.0), Quaternion::scalar(1.0), Orientation::Positive);
    (x.reexpress(o), y.reexpress(o))
}

pub fn counterexample(cfg: &RunConfig) -> Vec<Check> {
    let tol = PRODUCT_TOL;
    let mut checks = Vec::new();
    for o in [Orientation::Positive, Orientation::Negative] {
        let tag = format!("[λ={o}]");
        let (x, y) = counterexample_pair(o);
        let xy = x.k_product(&y).unwrap();
        let (nx, ny) = (x.geometric_norm(), y.geometric_norm());
        let want_x = Hyperbolic::new(1.0, -1.0);
        let want_y = Hyperbolic::new(1.0, 1.0);
        checks.push(Check::new(
            format!("{tag} geometric norm of eps-1 is 1-eps"),
            "counterexample",
            nx.approx_eq(want_x, 0.0, tol),
            hyperbolic_json(nx),
            hyperbolic_json(want_x),
            Some(tol),
        ));
        checks.push(Check::new(
            format!("{tag} geometric norm of eps+1 is 1+eps"),
            "counterexample",
            ny.approx_eq(want_y, 0.0, tol),
            hyperbolic_json(ny),
            hyperbolic_json(want_y),
            Some(tol),
        ));
        checks.push(Check::new(
            format!("{tag} product (eps-1)(eps+1) vanishes"),
            "counterexample",
            xy.is_zero(),
            json!(xy.coords()),
            Value::from(vec![0.0; 8]),
            Some(0.0),
        ));

        let rep = verify_composition_with_tol(&x, &y, cfg.tolerance).unwrap();
        checks.push(Check::new(
            format!("{tag} geometric norm sides agree"),
            "counterexample",
            rep.equal && rep.lhs == Hyperbolic::ZERO,
            json!({ "lhs": hyperbolic_json(rep.lhs), "rhs": hyperbolic_json(rep.rhs) }),
            json!({ "lhs": [0.0, 0.0], "rhs": [0.0, 0.0] }),
            Some(cfg.tolerance),
        ));

        let lhs = xy.scalar_norm();
        let rhs = x.scalar_norm() * y.scalar_norm();
        checks.push(Check::new(
            format!("{tag} scalar norm sides diverge"),
            "counterexample",
            lhs.abs() <= tol && (rhs - 2.0).abs() <= tol,
            json!({ "lhs": lhs, "rhs": rhs }),
            json!({ "lhs": 0.0, "rhs": 2.0 }),
            Some(tol),
        ));

        let defect = x.orthogonality_defect();
        checks.push(Check::new(
            format!("{tag} eps-1 violates the zero-defect condition"),
            "counterexample",
            defect.abs() > tol,
            json!(defect),
            json!(-2.0),
            Some(tol),
        ));
    }
    checks
}

pub fn simulate_singlet(cfg: &RunConfig) -> anyhow::Result<Vec<Check>> {
    let mut rng = rng::stream(cfg.seed, SINGLET_STREAM);
    let n = cfg.trials;
    let bound = 5.0 / (n as f64).sqrt();
    let mut checks = Vec::new();
    let (mut worst_scalar, mut worst_residual, mut worst_moment, mut worst_quantum) =
        (0.0f64, 0.0f64, 0.0f64, 0.0f64);

    for i in 0..cfg.pairs {
        let a = sample_unit_vector(&mut rng);
        let b = sample_unit_vector(&mut rng);
        let sim = SimConfig::new(n, rng::derive_seed(cfg.seed, i)).with_workers(cfg.workers);
        let est = match (&cfg.dump_trials, i) {
            (Some(path), 0) => dump_trials(path, a, b, &sim)?,
            _ => bell::simulate(a, b, &sim)?,
        };
        let target = -a.dot(b);
        let scalar_err = (est.scalar_mean - target).abs();
        let moment_err = (est.product_moment + 1.0).abs();
        let quantum_err = (est.scalar_mean - singlet_expectation(a, b)).abs();
        worst_scalar = worst_scalar.max(scalar_err);
        worst_residual = worst_residual.max(est.bivector_residual);
        worst_moment = worst_moment.max(moment_err);
        worst_quantum = worst_quantum.max(quantum_err);
        let pass = scalar_err <= SCALAR_CORRELATOR_TOL
            && est.bivector_residual <= bound
            && est.mean_a.abs() <= bound
            && est.mean_b.abs() <= bound;
        checks.push(Check::new(
            format!("pair {i:03}"),
            "singlet-correlation",
            pass,
            json!({
                "a": a.as_array(),
                "b": b.as_array(),
                "scalar_mean": est.scalar_mean,
                "bivector_residual": est.bivector_residual,
                "stderr": est.stderr,
                "product_moment": est.product_moment,
                "mean_a": est.mean_a,
                "mean_b": est.mean_b,
            }),
            json!({
                "scalar_mean": target,
                "bivector_residual_max": bound,
                "marginal_max": bound,
            }),
            Some(SCALAR_CORRELATOR_TOL),
        ));
    }

    checks.push(Check::new(
        "scalar correlator equals -a.b",
        "singlet-correlation",
        worst_scalar <= SCALAR_CORRELATOR_TOL,
        json!({ "pairs": cfg.pairs, "max_abs_error": worst_scalar }),
        json!({ "max_abs_error": 0.0 }),
        Some(SCALAR_CORRELATOR_TOL),
    ));
    checks.push(Check::new(
        "bivector residual within 5/sqrt(n)",
        "singlet-correlation",
        worst_residual <= bound,
        json!({ "pairs": cfg.pairs, "max_residual": worst_residual }),
        json!({ "max_residual": bound }),
        None,
    ));
    checks.push(Check::new(
        "outcome product moment is -1",
        "order-switching",
        worst_moment == 0.0,
        json!({ "pairs": cfg.pairs, "max_abs_error": worst_moment }),
        json!({ "product_moment": -1.0 }),
        Some(0.0),
    ));
    checks.push(Check::new(
        "scalar correlator matches the singlet expectation",
        "singlet-correlation",
        worst_quantum <= QUANTUM_TOL,
        json!({ "pairs": cfg.pairs, "max_abs_error": worst_quantum }),
        json!({ "max_abs_error": 0.0 }),
        Some(QUANTUM_TOL),
    ));
    Ok(checks)
}

fn dump_trials(
    path: &Path,
    a: UnitVector3,
    b: UnitVector3,
    sim: &SimConfig,
) -> anyhow::Result<bell::CorrelationEstimate> {
    let f = std::fs::File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    bell::write_trials_csv(BufWriter::new(f), a, b, sim)
        .with_context(|| format!("cannot write {}", path.display()))
}

pub fn chsh(cfg: &RunConfig) -> anyhow::Result<Vec<Check>> {
    let mut rng = rng::stream(cfg.seed, CHSH_STREAM);
    let ceiling = 2.0 * std::f64::consts::SQRT_2;
    let mut checks = Vec::new();

    let [a, a2, b, b2] = tsirelson_settings();
    let spectrum = hermitian_eigenvalues(&chsh_operator(a, a2, b, b2))?;
    let extremes = [spectrum[0], spectrum[3]];
    checks.push(Check::new(
        "CHSH operator extremes at canonical settings",
        "tsirelson",
        (extremes[0] + ceiling).abs() <= SPECTRUM_TOL && (extremes[1] - ceiling).abs() <= SPECTRUM_TOL,
        json!(spectrum),
        json!([-ceiling, 0.0, 0.0, ceiling]),
        Some(SPECTRUM_TOL),
    ));

    let mut radius = 0.0f64;
    for _ in 0..RANDOM_QUADRUPLES {
        let s: [UnitVector3; 4] = std::array::from_fn(|_| sample_unit_vector(&mut rng));
        let vals = hermitian_eigenvalues(&chsh_operator(s[0], s[1], s[2], s[3]))?;
        radius = radius.max(vals[0].abs()).max(vals[3].abs());
    }
    checks.push(Check::new(
        "spectral radius never exceeds 2*sqrt(2)",
        "tsirelson",
        radius <= ceiling + SPECTRUM_TOL,
        json!({ "quadruples": RANDOM_QUADRUPLES, "max_spectral_radius": radius }),
        json!({ "max_spectral_radius": ceiling }),
        Some(SPECTRUM_TOL),
    ));

    let set = boole_bound_enumeration();
    checks.push(Check::new(
        "outcome combination takes only -2 and +2",
        "boole-enumeration",
        set == BTreeSet::from([-2, 2]),
        json!(set),
        json!([-2, 2]),
        Some(0.0),
    ));

    let additivity = eigenvalue_additivity_report(a, a2, b, b2)?;
    checks.push(Check::new(
        "extreme eigenvalue is not an outcome combination",
        "eigenvalue-additivity",
        !additivity.extreme_in_combination_set && !additivity.overlap,
        json!({
            "spectral_radius": additivity.spectral_radius,
            "extreme_in_combination_set": additivity.extreme_in_combination_set,
            "any_overlap": additivity.overlap,
        }),
        json!({ "extreme_in_combination_set": false, "any_overlap": false }),
        Some(SPECTRUM_TOL),
    ));

    let spin = spin_sum_spectrum(UnitVector3::X, UnitVector3::Y);
    let root2 = std::f64::consts::SQRT_2;
    let spin_ok = (spin[0] + root2).abs() <= SPIN_SUM_TOL
        && (spin[1] - root2).abs() <= SPIN_SUM_TOL
        && spin.iter().all(|v| [-2.0, 0.0, 2.0].iter().all(|w| (v - w).abs() > SPIN_SUM_TOL));
    checks.push(Check::new(
        "sigma.x + sigma.y has eigenvalues +-sqrt(2)",
        "spin-sum",
        spin_ok,
        json!(spin),
        json!([-root2, root2]),
        Some(SPIN_SUM_TOL),
    ));

    let mut mismatches = 0usize;
    for _ in 0..LINEARITY_CONFIGURATIONS {
        let s: [UnitVector3; 4] = std::array::from_fn(|_| sample_unit_vector(&mut rng));
        let hidden: Vec<UnitVector3> =
            (0..LINEARITY_SAMPLE).map(|_| sample_unit_vector(&mut rng)).collect();
        let sign = |x: f64| if x >= 0.0 { 1 } else { -1 };
        let rep = expectation_linearity_check(&hidden, |l| SettingOutcomes {
            a: sign(s[0].dot(*l)),
            a_prime: sign(s[1].dot(*l)),
            b: -sign(s[2].dot(*l)),
            b_prime: -sign(s[3].dot(*l)),
        })?;
        mismatches += usize::from(!rep.equal);
    }
    checks.push(Check::new(
        "sum of expectations equals expectation of sum",
        "expectation-linearity",
        mismatches == 0,
        json!({ "configurations": LINEARITY_CONFIGURATIONS, "sample": LINEARITY_SAMPLE, "mismatches": mismatches }),
        json!({ "mismatches": 0 }),
        Some(0.0),
    ));

    let mut worst = 0.0f64;
    for _ in 0..RANDOM_QUADRUPLES {
        let a = sample_unit_vector(&mut rng);
        let b = sample_unit_vector(&mut rng);
        worst = worst.max((singlet_expectation(a, b) + a.dot(b)).abs());
    }
    checks.push(Check::new(
        "singlet expectation is -a.b",
        "singlet-correlation",
        worst <= QUANTUM_TOL,
        json!({ "pairs": RANDOM_QUADRUPLES, "max_abs_error": worst }),
        json!({ "max_abs_error": 0.0 }),
        Some(QUANTUM_TOL),
    ));
    Ok(checks)
}
