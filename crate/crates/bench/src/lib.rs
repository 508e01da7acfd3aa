//! Seeded fixtures shared by the benchmarks.

use ksphere_core::bell::{sample_unit_vector, UnitVector3};
use ksphere_core::chsh::{chsh_operator, Operator4};
use ksphere_core::even::{random_element, KElement, Orientation};
use ksphere_core::multivector::{Multivector16, DIM};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture_rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x6b73_7068)
}

pub fn multivectors(n: usize) -> Vec<Multivector16> {
    let mut rng = fixture_rng();
    (0..n)
        .map(|_| Multivector16::from_coeffs(std::array::from_fn::<f64, DIM, _>(|_| rng.random_range(-1.0..1.0))))
        .collect()
}

pub fn k_elements(n: usize, orientation: Orientation) -> Vec<KElement> {
    let mut rng = fixture_rng();
    (0..n).map(|_| random_element(&mut rng, orientation)).collect()
}

pub fn settings() -> (UnitVector3, UnitVector3) {
    let mut rng = fixture_rng();
    (sample_unit_vector(&mut rng), sample_unit_vector(&mut rng))
}

pub fn chsh_operators(n: usize) -> Vec<Operator4> {
    let mut rng = fixture_rng();
    (0..n)
        .map(|_| {
            let s: [UnitVector3; 4] = std::array::from_fn(|_| sample_unit_vector(&mut rng));
            chsh_operator(s[0], s[1], s[2], s[3])
        })
        .collect()
}
