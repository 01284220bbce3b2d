//! Small numeric helpers: safe binomials, factorials, and the counter-based
//! pseudorandom stream used by the random-complex sampler.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Binomial coefficient that returns 0 outside the Pascal triangle
/// (negative arguments or k > n) instead of panicking.
pub fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Exact u64 binomial for ranking purposes; saturates on overflow.
pub fn binom_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// SplitMix64-style stream: the `counter`-th output of the generator keyed by
/// `seed`. Pure function of (seed, counter), so draws can be evaluated in any
/// order and in parallel with identical results.
pub fn splitmix_stream(seed: u64, counter: u64) -> u64 {
    let mut z = seed.wrapping_add(counter.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform draw in [0, 1) from 53 random bits.
pub fn unit_f64(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binom_edges() {
        assert_eq!(binom(5, 2), BigInt::from(10));
        assert_eq!(binom(5, 0), BigInt::one());
        assert_eq!(binom(5, 6), BigInt::zero());
        assert_eq!(binom(5, -1), BigInt::zero());
        assert_eq!(binom(-2, 1), BigInt::zero());
        assert_eq!(binom(60, 30), "118264581564861424".parse().unwrap());
    }

    #[test]
    fn factorial_small() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(6), BigInt::from(720));
    }

    #[test]
    fn stream_is_deterministic_and_spread() {
        let a = splitmix_stream(42, 0);
        let b = splitmix_stream(42, 0);
        assert_eq!(a, b);
        assert_ne!(splitmix_stream(42, 0), splitmix_stream(42, 1));
        assert_ne!(splitmix_stream(42, 0), splitmix_stream(43, 0));
        let mean: f64 = (0..10_000)
            .map(|i| unit_f64(splitmix_stream(7, i)))
            .sum::<f64>()
            / 10_000.0;
        assert!((mean - 0.5).abs() < 0.02, "mean {mean}");
    }
}
