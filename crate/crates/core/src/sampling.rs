//! Deterministic random series for the verification harness and tests.
//!
//! The generator is part of the tool's contract: a ChaCha8 stream seeded
//! with `seed_from_u64`, with one coefficient drawn per word, iterating
//! degrees `1..=D` and words of each degree in lexicographic order. Each
//! coefficient is `numerator/denominator` with the numerator uniform on
//! `{-9..9}` and the denominator uniform on `{1..4}`, drawn in that order.
//! Identical seeds produce identical series on every platform.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ncseries::{NCSeries, Word};
use crate::transforms::Distribution;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A dense series with small random rational coefficients.
pub fn random_series(k: usize, degree: usize, rng: &mut ChaCha8Rng) -> NCSeries {
    let mut f = NCSeries::zero(k, degree).expect("sampler parameters are validated by caller");
    for n in 1..=degree {
        for w in Word::enumerate(k, n) {
            let numerator: i64 = rng.gen_range(-9..=9);
            let denominator: i64 = rng.gen_range(1..=4);
            f.set_coefficient(
                w,
                BigRational::new(BigInt::from(numerator), BigInt::from(denominator)),
            )
            .expect("generated words are in range");
        }
    }
    f
}

/// A distribution with random moments, from the same stream.
pub fn random_distribution(k: usize, degree: usize, rng: &mut ChaCha8Rng) -> Distribution {
    Distribution::from_moments(random_series(k, degree, rng))
}
