use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{ah_status, bin, frup, require, to_i64, NumerologyError, SystemSpec};
use crate::algebra::is_prime;

/// `k` with `k + 1 = C(d+n, n)/(n+1)`, when that quotient is an integer.
pub fn bridge_k(d: u32, n: u32) -> Option<i64> {
    let c = bin(i64::from(d + n), i64::from(n));
    let (q, r) = c.div_rem(&BigInt::from(n + 1));
    r.is_zero().then(|| to_i64(&q) - 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UniquenessTag {
    Unique,
    NotUnique,
    NoCanonicalForm,
    OutOfTheoremRange,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniquenessVerdict {
    pub tag: UniquenessTag,
    pub k: Option<i64>,
    pub citation: &'static str,
}

impl UniquenessVerdict {
    /// Number of summands `s = k + 1`.
    pub fn s(&self) -> Option<i64> {
        self.k.map(|k| k + 1)
    }
}

/// Is a general degree-`d` form in `n+1` variables a sum of `k+1` powers in a unique way?
pub fn waring_verdict(d: u32, n: u32) -> UniquenessVerdict {
    let k = bridge_k(d, n);
    let (tag, citation) = if d == 1 {
        (UniquenessTag::Unique, "a linear form is its own first power")
    } else if n == 1 {
        if d % 2 == 1 {
            (UniquenessTag::Unique, "binary forms of odd degree (Sylvester)")
        } else {
            (
                UniquenessTag::NoCanonicalForm,
                "binary forms of even degree: (d+2)/2 is not an integer",
            )
        }
    } else if (d, n) == (5, 2) {
        (UniquenessTag::Unique, "plane quintics as sums of 7 powers")
    } else if (d, n) == (3, 3) {
        (UniquenessTag::Unique, "cubic surfaces as sums of 5 powers")
    } else if k.is_none() {
        (
            UniquenessTag::NoCanonicalForm,
            "C(d+n,n)/(n+1) is not an integer",
        )
    } else if d > n {
        (
            UniquenessTag::NotUnique,
            "d > n > 1: the secant map has degree > 1 outside (5,2)",
        )
    } else if n <= 3 {
        (
            UniquenessTag::NotUnique,
            "n <= 3: unique only for (2k+1,1), (5,2), (3,3)",
        )
    } else {
        (
            UniquenessTag::OutOfTheoremRange,
            "d <= n with n >= 4 is not covered",
        )
    };
    UniquenessVerdict { tag, k, citation }
}

/// Three-valued answer on ordinary double points of a general member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConumVerdict {
    Nodal,
    NonNodal(String),
    Indeterminate,
}

pub fn conum_verdict(spec: SystemSpec) -> Result<ConumVerdict, NumerologyError> {
    let SystemSpec { d, n, l } = spec;
    require(n >= 3, || format!("need n >= 3, got {n}"))?;
    require(ah_status(spec).dim >= 0, || format!("{spec} is empty"))?;
    Ok(match (d, n, l) {
        (4, 3, 8) => ConumVerdict::NonNodal("pencil of quadrics squared".into()),
        (4, 3, 9) => ConumVerdict::NonNodal("double quadric".into()),
        (4, _, _) => ConumVerdict::Nodal,
        (d, _, _) if d >= 5 && is_prime(u64::from(d)) => ConumVerdict::Nodal,
        _ => ConumVerdict::Indeterminate,
    })
}

/// For prime `d >= 5`, one of `frup(n,d)`, `frup(n-1,d)` vanishes.
pub fn prime_frup_vanishing(d: u32, n: u32) -> Result<bool, NumerologyError> {
    require(d >= 5 && is_prime(u64::from(d)), || {
        format!("d={d} is not a prime >= 5")
    })?;
    require(n >= 2, || format!("need n >= 2, got {n}"))?;
    Ok(frup(n, d).is_zero() || frup(n - 1, d).is_zero())
}

/// Expected codimension of the `k`-secant variety of the degree-`d` Veronese of `P^n`.
pub fn secant_codim(d: u32, n: u32, k: u32) -> i64 {
    let big_n: BigInt = bin(i64::from(n + d), i64::from(n)) - 1;
    let span = BigInt::from(k + 1) * (n + 1) - 1;
    to_i64(&(&big_n - big_n.clone().min(span)))
}

/// `codim sec_k >= n + 1`.
pub fn cover_condition(d: u32, n: u32, k: u32) -> Result<bool, NumerologyError> {
    require(d >= 4 && n >= 3, || {
        format!("need d >= 4, n >= 3; got d={d}, n={n}")
    })?;
    Ok(secant_codim(d, n, k) >= i64::from(n + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bridge_examples() {
        assert_eq!(bridge_k(5, 2), Some(6));
        assert_eq!(bridge_k(3, 3), Some(4));
        assert_eq!(bridge_k(4, 3), None);
        assert_eq!(bridge_k(7, 1), Some(3));
    }

    #[test]
    fn waring_examples() {
        let v = waring_verdict(5, 2);
        assert_eq!((v.tag, v.k), (UniquenessTag::Unique, Some(6)));
        let v = waring_verdict(7, 1);
        assert_eq!((v.tag, v.s()), (UniquenessTag::Unique, Some(4)));
        assert_eq!(waring_verdict(7, 2).tag, UniquenessTag::NotUnique);
        assert_eq!(waring_verdict(4, 1).tag, UniquenessTag::NoCanonicalForm);
        assert_eq!(waring_verdict(4, 3).tag, UniquenessTag::NoCanonicalForm);
        assert_eq!(waring_verdict(3, 3).k, Some(4));
        assert_eq!(waring_verdict(2, 2).tag, UniquenessTag::NotUnique);
        assert_eq!(waring_verdict(1, 4).tag, UniquenessTag::Unique);
        assert_eq!(waring_verdict(4, 5).tag, UniquenessTag::OutOfTheoremRange);
    }

    #[test]
    fn waring_unique_scan() {
        for d in 2..=30 {
            for n in 2..d {
                let v = waring_verdict(d, n);
                assert_eq!(v.tag == UniquenessTag::Unique, (d, n) == (5, 2), "({d},{n})");
                assert_eq!(v.k.is_some(), bridge_k(d, n).is_some());
            }
        }
    }

    #[test]
    fn conum_examples() {
        let s = |d, n, l| SystemSpec::new(d, n, l).unwrap();
        for l in 0..=13 {
            assert_eq!(conum_verdict(s(5, 3, l)).unwrap(), ConumVerdict::Nodal);
        }
        assert!(matches!(
            conum_verdict(s(4, 3, 8)).unwrap(),
            ConumVerdict::NonNodal(_)
        ));
        assert!(matches!(
            conum_verdict(s(4, 3, 9)).unwrap(),
            ConumVerdict::NonNodal(_)
        ));
        assert_eq!(conum_verdict(s(4, 3, 7)).unwrap(), ConumVerdict::Nodal);
        assert_eq!(
            conum_verdict(s(6, 9, 500)).unwrap(),
            ConumVerdict::Indeterminate
        );
        assert!(conum_verdict(s(5, 3, 14)).is_err());
        assert!(conum_verdict(s(5, 2, 3)).is_err());
    }

    #[test]
    fn prime_frup_examples() {
        assert!(prime_frup_vanishing(5, 3).unwrap());
        assert!(prime_frup_vanishing(7, 10).unwrap());
        assert!(prime_frup_vanishing(6, 3).is_err());
    }

    #[test]
    fn cover_examples() {
        assert!(cover_condition(4, 3, 6).unwrap());
        assert_eq!(secant_codim(4, 3, 6), 7);
        assert!(!cover_condition(4, 3, 8).unwrap());
        assert_eq!(secant_codim(5, 4, 20), 21);
        assert!(cover_condition(5, 4, 20).unwrap());
        assert!(cover_condition(3, 3, 1).is_err());
    }
}
