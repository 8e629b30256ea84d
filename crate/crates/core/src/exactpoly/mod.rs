//! Exact integer polynomial and truncated power-series arithmetic.

mod json;
pub(crate) mod multi;
mod series;
mod uni;

pub use json::{MultiPolyJson, TermJson, UniPolyJson};
pub(crate) use json::parse_int;
pub use multi::{Exponents, MultiPoly};
pub use series::FormalSeries;
pub use uni::UniPoly;

use num_bigint::BigInt;
use num_traits::One;

/// `n!`
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(9), BigInt::from(362_880));
        assert_eq!(binomial(7, 2), BigInt::from(21));
        assert_eq!(binomial(7, 4), BigInt::from(35));
        assert_eq!(binomial(3, 5), BigInt::from(0));
    }
}
