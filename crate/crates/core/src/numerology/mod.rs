//! Integer and rational evaluation of dimension counts, degeneration conditions and
//! uniqueness verdicts. Nothing here touches linear algebra.

mod conditions;
mod verdicts;

pub use conditions::{
    delta, dimbase_check, dimbase_check_with, fc_certificate, fc_certificate_with, fr_values,
    lh_params, lh_params_exact, th_can_applies, th_fc_applies, win_check, Conditions, FcCase, FcCertificate,
    RuleSet, WinVerdict, FC_OVERRIDES,
};
pub use verdicts::{
    bridge_k, conum_verdict, cover_condition, prime_frup_vanishing, secant_codim, waring_verdict,
    ConumVerdict, UniquenessTag, UniquenessVerdict,
};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::binomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumerologyError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("value {0} does not fit in i64")]
    Overflow(BigInt),
}

fn require(ok: bool, what: impl FnOnce() -> String) -> Result<(), NumerologyError> {
    if ok {
        Ok(())
    } else {
        Err(NumerologyError::Precondition(what()))
    }
}

/// Degree-`d` forms on `P^n` singular at `l` general points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SystemSpec {
    pub d: u32,
    pub n: u32,
    pub l: u32,
}

impl SystemSpec {
    /// Validated constructor: `d, n >= 1`.
    pub fn new(d: u32, n: u32, l: u32) -> Result<Self, NumerologyError> {
        require(d >= 1 && n >= 1, || format!("need d, n >= 1, got d={d}, n={n}"))?;
        Ok(Self { d, n, l })
    }

    /// Number of monomials, `C(n+d, n)`.
    pub fn space_dim(&self) -> BigInt {
        bin(i64::from(self.n + self.d), i64::from(self.n))
    }
}

impl fmt::Display for SystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({},{},{})", self.d, self.n, self.l)
    }
}

/// A system whose last `h` points are specialized to the hyperplane `x_n = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpecializedSpec {
    pub base: SystemSpec,
    pub h: u32,
}

impl SpecializedSpec {
    pub fn new(base: SystemSpec, h: u32) -> Result<Self, NumerologyError> {
        require(h <= base.l, || format!("h={h} exceeds l={}", base.l))?;
        Ok(Self { base, h })
    }

    pub fn of(d: u32, n: u32, l: u32, h: u32) -> Result<Self, NumerologyError> {
        Self::new(SystemSpec::new(d, n, l)?, h)
    }

    /// Number of points off the hyperplane.
    pub fn general(&self) -> u32 {
        self.base.l - self.h
    }
}

impl fmt::Display for SpecializedSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "H({},{},{},{})",
            self.base.d, self.base.n, self.base.l, self.h
        )
    }
}

pub(crate) fn bin(a: i64, b: i64) -> BigInt {
    if a < 0 {
        return BigInt::zero();
    }
    BigInt::from(binomial(a as u64, b))
}

/// `ceil(C(a, b) / c)`.
pub(crate) fn kdn(a: i64, b: i64, c: i64) -> BigInt {
    bin(a, b).div_ceil(&BigInt::from(c))
}

pub(crate) fn try_i64(v: BigInt) -> Result<i64, NumerologyError> {
    v.to_i64().ok_or(NumerologyError::Overflow(v))
}

pub(crate) fn to_i64(v: &BigInt) -> i64 {
    v.to_i64().expect("value exceeds the i64 range")
}

/// `C(n+d, n) - (n+1) l - 1`; may be negative.
pub fn expected_dim(spec: SystemSpec) -> i64 {
    to_i64(&(spec.space_dim() - BigInt::from(spec.n + 1) * spec.l - 1))
}

/// `ceil(C(a+b, a)/(a+1)) - C(a+b, a)/(a+1)`, a rational in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FrupValue(BigRational);

impl FrupValue {
    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for FrupValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn frup(a: u32, b: u32) -> FrupValue {
    let c = bin(i64::from(a) + i64::from(b), i64::from(a));
    let m = BigInt::from(a + 1);
    let r = c.mod_floor(&m);
    let num = if r.is_zero() { r } else { &m - r };
    FrupValue(BigRational::new(num, m))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AhTag {
    ExpectedEffective,
    ExpectedEmpty,
    Exceptional,
    OutOfTheoremRange,
}

/// The AH prediction for a double-point system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AhStatus {
    pub tag: AhTag,
    /// Projective dimension; `-1` means empty.
    pub dim: i64,
}

/// The four triples where double points fail to impose independent conditions.
pub const AH_EXCEPTIONS: [(u32, u32, u32); 4] = [(3, 4, 7), (4, 2, 5), (4, 3, 9), (4, 4, 14)];

pub fn is_ah_exception(spec: SystemSpec) -> bool {
    AH_EXCEPTIONS.contains(&(spec.d, spec.n, spec.l))
}

pub fn ah_status(spec: SystemSpec) -> AhStatus {
    let expected = expected_dim(spec);
    if spec.d <= 2 || spec.n <= 1 {
        return AhStatus {
            tag: AhTag::OutOfTheoremRange,
            dim: expected.max(-1),
        };
    }
    if is_ah_exception(spec) {
        return AhStatus {
            tag: AhTag::Exceptional,
            dim: 0,
        };
    }
    AhStatus {
        tag: if expected >= 0 {
            AhTag::ExpectedEffective
        } else {
            AhTag::ExpectedEmpty
        },
        dim: expected.max(-1),
    }
}

/// Dimension known without interpolation: the AH range and complete systems.
pub(crate) fn known_dim(spec: SystemSpec) -> Option<i64> {
    if spec.l == 0 {
        return Some(expected_dim(spec));
    }
    if spec.n == 0 {
        // the only point of P^0 kills x_0^d as soon as it is doubled
        return Some(-1);
    }
    match ah_status(spec).tag {
        AhTag::OutOfTheoremRange => None,
        _ => Some(ah_status(spec).dim),
    }
}
