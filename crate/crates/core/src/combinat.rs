//! Binomial coefficients and factorials over big integers.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

/// `binom(n, k)`, extended by zero outside `0 <= k <= n`.
pub fn binom(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Product of the integers in `lo..=hi` (empty product is 1).
pub fn rising_product(lo: i64, hi: i64) -> BigInt {
    (lo..=hi).fold(BigInt::one(), |acc, i| acc * i)
}

/// Converts an exponent to `i64`, reporting overflow with some context.
pub(crate) fn to_i64(x: &BigInt, what: &str) -> crate::Result<i64> {
    x.to_i64()
        .ok_or_else(|| crate::Error::Overflow(format!("{what} = {x}")))
}
