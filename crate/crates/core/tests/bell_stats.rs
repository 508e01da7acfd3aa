use ksphere_core::bell::{
    detector_bivector, rng, sample_unit_vector, simulate, simulate_with_records, trial_product,
    SimConfig, UnitVector3,
};
use ksphere_core::even::Orientation;
use proptest::prelude::*;

fn unit(v: [f64; 3]) -> UnitVector3 {
    UnitVector3::normalize(v).unwrap()
}

#[test]
fn sampled_vectors_are_unit() {
    let mut r = rng::stream(1, 0);
    for _ in 0..10_000 {
        let v = sample_unit_vector(&mut r).as_array();
        assert!(((v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn sampled_vectors_center_on_origin() {
    let mut r = rng::stream(2, 0);
    let n = 100_000;
    let mut mean = [0.0; 3];
    for _ in 0..n {
        let v = sample_unit_vector(&mut r).as_array();
        for k in 0..3 {
            mean[k] += v[k] / n as f64;
        }
    }
    // per-component sd is 1/√3; 0.02 is ~11 standard errors
    for m in mean {
        assert!(m.abs() < 0.02, "{mean:?}");
    }
}

#[test]
fn cos_angle_is_uniform() {
    // For a uniform point on S², the cosine with any fixed axis is uniform on
    // [−1, 1]. Kolmogorov–Smirnov against that CDF.
    let mut r = rng::stream(3, 0);
    let n = 100_000;
    let axis = unit([1.0, 2.0, -2.0]);
    let mut cos: Vec<f64> = (0..n).map(|_| sample_unit_vector(&mut r).dot(axis)).collect();
    cos.sort_by(f64::total_cmp);
    let mut ks = 0.0f64;
    for (i, &c) in cos.iter().enumerate() {
        let f = 0.5 * (c + 1.0);
        ks = ks.max((f - i as f64 / n as f64).abs()).max(((i + 1) as f64 / n as f64 - f).abs());
    }
    assert!(ks < 0.01, "KS statistic {ks}");
}

#[test]
fn aligned_settings_give_minus_one() {
    let a = unit([0.3, 0.4, -0.2]);
    for n in [1, 7, 100_000] {
        let est = simulate(a, a, &SimConfig::new(n, 5)).unwrap();
        assert!((est.scalar_mean + a.dot(a)).abs() <= 4.0 * f64::EPSILON);
        assert_eq!(est.bivector_residual, 0.0);
    }
}

#[test]
fn perpendicular_settings() {
    let n = 1_000_000;
    let est = simulate(UnitVector3::X, UnitVector3::Y, &SimConfig::new(n, 42)).unwrap();
    assert_eq!(est.scalar_mean, 0.0);
    assert!(est.bivector_residual <= 5.0 / (n as f64).sqrt());
    assert_eq!(est.product_moment, -1.0);
}

#[test]
fn half_overlap_settings() {
    let a = UnitVector3::X;
    let b = unit([0.5, 0.75f64.sqrt(), 0.0]);
    for seed in 0..5 {
        let est = simulate(a, b, &SimConfig::new(10_001, seed)).unwrap();
        assert!((est.scalar_mean + a.dot(b)).abs() <= 4.0 * f64::EPSILON);
        assert!((est.scalar_mean + 0.5).abs() < 1e-15);
    }
}

#[test]
fn residual_halves_when_trials_quadruple() {
    let (a, b) = (UnitVector3::X, UnitVector3::Z);
    let (n, seeds) = (20_000u64, 50u64);
    let mean_res = |trials: u64| -> f64 {
        (0..seeds)
            .map(|s| simulate(a, b, &SimConfig::new(trials, 1000 + s)).unwrap().bivector_residual)
            .sum::<f64>()
            / seeds as f64
    };
    let ratio = mean_res(n) / mean_res(4 * n);
    assert!((1.5..=2.5).contains(&ratio), "ratio {ratio}");
}

#[test]
fn outcome_marginals_and_anticorrelation() {
    let n = 200_000u64;
    let a = unit([0.1, -0.7, 0.3]);
    let b = unit([0.9, 0.2, -0.4]);
    let mut all_opposite = true;
    let est = simulate_with_records(a, b, &SimConfig::new(n, 77), |_, rec| {
        all_opposite &= rec.a == -rec.b && rec.a == rec.lambda.as_i8();
    })
    .unwrap();
    assert!(all_opposite);
    let bound = 5.0 / (n as f64).sqrt();
    assert!(est.mean_a.abs() <= bound && est.mean_b.abs() <= bound);
    assert_eq!(est.mean_a, -est.mean_b);
}

#[test]
fn orientation_switch_matches_negative_basis_product() {
    // D(b)D(a) in the standard basis has the same coordinates as D(a)D(b)
    // read in the λ = −1 basis.
    let a = unit([0.6, -0.1, 0.2]);
    let b = unit([-0.3, 0.5, 0.8]);
    let da = detector_bivector(a).reexpress(Orientation::Negative);
    let db = detector_bivector(b).reexpress(Orientation::Negative);
    let in_negative_basis = da.k_product(&db).unwrap().coords();
    let branch = trial_product(a, b, Orientation::Negative).coords();
    for k in 0..8 {
        assert!((in_negative_basis[k] - branch[k]).abs() < 1e-15, "{k}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_correlator_is_exact(
        av in prop::array::uniform3(-1f64..1.0),
        bv in prop::array::uniform3(-1f64..1.0),
        n in 1u64..5000,
        seed in any::<u64>(),
    ) {
        prop_assume!(av.iter().any(|x| x.abs() > 1e-3) && bv.iter().any(|x| x.abs() > 1e-3));
        let (a, b) = (unit(av), unit(bv));
        let est = simulate(a, b, &SimConfig::new(n, seed)).unwrap();
        prop_assert!((est.scalar_mean + a.dot(b)).abs() <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn runs_are_deterministic(n in 1u64..200_000, seed in any::<u64>(), workers in 1usize..6) {
        let (a, b) = (unit([0.2, 0.3, 0.4]), unit([-0.5, 0.1, 0.2]));
        let one = simulate(a, b, &SimConfig::new(n, seed)).unwrap();
        let two = simulate(a, b, &SimConfig::new(n, seed).with_workers(workers)).unwrap();
        prop_assert_eq!(one, two);
    }
}
