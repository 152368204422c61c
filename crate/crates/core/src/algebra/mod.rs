//! Exact arithmetic substrate: scalars, dense homogeneous forms, univariate
//! polynomials and matrices over the rationals or a prime field.

mod gcd;
mod matrix;
mod monomial;
mod poly;
mod scalar;
mod unipoly;

pub use gcd::form_gcd;
pub(crate) use gcd::random_invertible;
pub use matrix::{ExactMatrix, RankKernel};
pub use monomial::{monomial_count, monomial_index, Monomial, MonomialBasis};
pub use poly::HomogeneousPoly;
pub use scalar::{is_prime, Field, Scalar, DEFAULT_PRIMES, MIN_PRIME};
pub use unipoly::{resultant, uni_gcd, UniPoly};

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operands live in different fields ({0} vs {1})")]
    FieldMismatch(Field, Field),
    #[error("{0} is not an odd prime in (2^20, 2^32)")]
    InvalidModulus(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("resultant of two zero polynomials is undefined")]
    BothZero,
    #[error("parametrization is rank deficient")]
    RankDeficient,
    #[error("field characteristic {characteristic} does not exceed degree {degree}")]
    CharacteristicTooSmall { characteristic: u64, degree: u32 },
    #[error("unsupported number of variables: {0}")]
    Unsupported(usize),
    #[error("randomized computation failed after {0} attempts")]
    Unlucky(usize),
}

/// `C(a, b)`, zero when `b < 0` or `b > a`.
pub fn binomial(a: u64, b: i64) -> BigUint {
    if b < 0 || b as u64 > a {
        return BigUint::from(0u32);
    }
    let b = (b as u64).min(a - b as u64);
    let mut acc = BigUint::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// `C(a, b)` as a machine integer, for basis sizes; panics on overflow.
pub fn binomial_usize(a: usize, b: usize) -> usize {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        acc = acc * (a - i) as u128 / (i + 1) as u128;
    }
    usize::try_from(acc).expect("binomial overflows usize")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pascal(a: usize, b: usize) -> u128 {
        let mut row = vec![1u128];
        for _ in 0..a {
            let mut next = vec![1u128; row.len() + 1];
            for i in 1..row.len() {
                next[i] = row[i - 1] + row[i];
            }
            row = next;
        }
        row.get(b).copied().unwrap_or(0)
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(7, 2), BigUint::from(21u32));
        assert_eq!(binomial(5, 0), BigUint::from(1u32));
        assert_eq!(binomial(14, 8), BigUint::from(pascal(14, 8) as u64));
        assert_eq!(binomial(14, 8), BigUint::from(3003u32));
        assert_eq!(binomial(3, -1), BigUint::from(0u32));
        assert_eq!(binomial(3, 4), BigUint::from(0u32));
    }

    #[test]
    fn binomial_matches_pascal() {
        for a in 0..60usize {
            for b in 0..=a + 1 {
                assert_eq!(binomial(a as u64, b as i64), BigUint::from(pascal(a, b)));
                assert_eq!(binomial_usize(a, b) as u128, pascal(a, b));
            }
        }
    }
}
