#![allow(dead_code)]

use num_bigint::BigInt;
use obcalc_core::openbook::OpenBook3;
use obcalc_core::surface::{CombSurface, CurveName, TwistWord};
use obcalc_core::zmodule::IntMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub const DEFAULT_SEED: u64 = 0x0b0c_a1c0;

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(obcalc_core::seed_from_env(DEFAULT_SEED) ^ salt)
}

pub fn config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(obcalc_core::seed_from_env(DEFAULT_SEED)),
        failure_persistence: None,
        ..Default::default()
    }
}

/// Page shapes `(genus, boundary)` of the randomized suites.
pub const SHAPES: [(usize, usize); 4] = [(0, 1), (0, 2), (1, 1), (1, 2)];

pub fn curves(genus: usize, labels: &[String]) -> Vec<CurveName> {
    let mut c = Vec::new();
    for i in 1..=genus {
        c.push(CurveName::A(i));
        c.push(CurveName::B(i));
    }
    c.extend(labels.iter().map(|l| CurveName::D(l.clone())));
    c
}

/// Random word of length at most 4 over the standard curves, exponents in
/// `±1..=±3`.
pub fn random_word(rng: &mut impl Rng, page: &CombSurface, genus: usize) -> TwistWord {
    let pool = curves(genus, &page.labels());
    let len = rng.gen_range(0..=4);
    let factors: Vec<(CurveName, i64)> = (0..len)
        .map(|_| {
            let c = pool[rng.gen_range(0..pool.len())].clone();
            let k = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
            (c, k)
        })
        .collect();
    TwistWord::resolve(page, &factors).expect("standard curves resolve")
}

pub fn random_book(rng: &mut impl Rng, shape: (usize, usize)) -> OpenBook3 {
    let page = CombSurface::standard(shape.0, shape.1).expect("standard page");
    let w = random_word(rng, &page, shape.0);
    OpenBook3::new(page, w).expect("word fits page")
}

/// Two random books with equal binding counts and the identity matching of
/// labels.
pub fn random_pair(rng: &mut impl Rng) -> (OpenBook3, OpenBook3, Vec<(String, String)>) {
    let b = rng.gen_range(1..=2);
    let shapes: Vec<(usize, usize)> = SHAPES.iter().copied().filter(|s| s.1 == b).collect();
    let s0 = shapes[rng.gen_range(0..shapes.len())];
    let s1 = shapes[rng.gen_range(0..shapes.len())];
    let ob0 = random_book(rng, s0);
    let ob1 = random_book(rng, s1);
    let mut labels1 = ob1.labels();
    if rng.gen_bool(0.5) {
        labels1.reverse();
    }
    let matching = ob0.labels().into_iter().zip(labels1).collect();
    (ob0, ob1, matching)
}

pub fn random_matrix(rng: &mut impl Rng, max_dim: usize, bound: i64) -> IntMatrix {
    let r = rng.gen_range(1..=max_dim);
    let c = rng.gen_range(1..=max_dim);
    let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
    IntMatrix::from_rows(&rows)
}

pub fn random_class(rng: &mut impl Rng, n: usize, bound: i64) -> Vec<BigInt> {
    (0..n).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect()
}
