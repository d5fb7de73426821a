//! Exact rational scalars and small combinatorial helpers.
//!
//! The whole engine computes over arbitrary-precision rationals so that every
//! verified identity is a proof, not an approximation.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// The ground field: arbitrary-precision rationals, always in lowest terms.
pub type Rat = num_rational::BigRational;

/// The rational `n`.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// The rational `num/den`.
///
/// # Panics
///
/// Panics if `den == 0`; this constructor is meant for literal constants in
/// code, not for user input.
pub fn rat(num: i64, den: i64) -> Rat {
    assert!(den != 0, "rational literal with zero denominator");
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// `n!` as a rational (so it can be inverted without conversion).
pub fn factorial(n: u32) -> Rat {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rat::from_integer(acc)
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> Rat {
    if k > n {
        return Rat::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    Rat::new(num, den)
}
