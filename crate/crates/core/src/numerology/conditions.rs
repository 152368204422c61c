use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{
    ah_status, bin, expected_dim, frup, kdn, known_dim, require, to_i64, try_i64, AhTag, NumerologyError,
    SpecializedSpec, SystemSpec,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleSet {
    #[serde(rename = "d>=5")]
    DGe5,
    #[serde(rename = "d=4")]
    D4,
    #[serde(rename = "d=3")]
    D3,
    DimbaseDirect,
    ExplicitOverride,
}

/// Named conditions. `None` means the condition was not evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conditions {
    pub l: Option<bool>,
    pub h: Option<bool>,
    pub lh: Option<bool>,
    pub c: Option<bool>,
    pub d4: Option<bool>,
    pub d3: Option<bool>,
    /// The degree `d-1` residual bound of the base-locus conditions.
    pub bound: Option<bool>,
    /// Base-locus hypotheses, in order.
    pub ee_full: Option<bool>,
    pub ee_residual: Option<bool>,
    pub expected_trace: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WinVerdict {
    pub win: bool,
    pub rule_set: RuleSet,
    pub conditions: Conditions,
    /// Set when some needed dimension lies outside the AH range and no oracle was given.
    pub indeterminate: bool,
}

/// `ceil(C(n+d,n)/(n+1))`, the AH threshold.
fn ah_ceiling(d: u32, n: u32) -> BigInt {
    let (d, n) = (i64::from(d), i64::from(n));
    kdn(n + d, n, n + 1)
}

/// Exact-dimension test in the sense "actual = expected"; `nonneg` adds effectivity.
fn dim_check(spec: SystemSpec, dim: i64, nonneg: bool) -> bool {
    let e = expected_dim(spec);
    if nonneg {
        dim == e && e >= 0
    } else {
        dim == e.max(-1)
    }
}

/// Base-locus conditions, using only AH and complete systems.
pub fn dimbase_check(spec: SpecializedSpec) -> Result<WinVerdict, NumerologyError> {
    dimbase_inner(spec, &mut |_| None)
}

/// Base-locus conditions with an oracle for dimensions outside the AH range.
pub fn dimbase_check_with(
    spec: SpecializedSpec,
    oracle: &mut dyn FnMut(SystemSpec) -> i64,
) -> Result<WinVerdict, NumerologyError> {
    dimbase_inner(spec, &mut |s| Some(oracle(s)))
}

fn dimbase_inner(
    spec: SpecializedSpec,
    oracle: &mut dyn FnMut(SystemSpec) -> Option<i64>,
) -> Result<WinVerdict, NumerologyError> {
    let SystemSpec { d, n, l } = spec.base;
    require(d >= 2, || format!("base-locus check needs d >= 2, got {d}"))?;
    let h = spec.h;
    let mut indeterminate = false;
    let mut dim_of = |s: SystemSpec| -> Option<i64> {
        let v = known_dim(s).or_else(|| oracle(s));
        if v.is_none() {
            indeterminate = true;
        }
        v
    };

    let full = spec.base;
    let residual = SystemSpec { d: d - 1, n, l: l - h };
    let square = SystemSpec { d: d - 2, n, l: l - h };
    let ee_full = dim_of(full).map(|v| dim_check(full, v, true));
    let ee_residual = dim_of(residual).map(|v| dim_check(residual, v, true));
    let trace = SystemSpec { d, n: n - 1, l: h };
    let expected_trace = dim_of(trace).map(|v| dim_check(trace, v, false));
    let lhs = bin(i64::from(n + d - 1), i64::from(n))
        - BigInt::from(n + 1) * (l - h)
        - BigInt::from(h);
    let bound = dim_of(square).map(|g| lhs >= BigInt::from(g.max(1)));

    let conditions = Conditions {
        ee_full,
        ee_residual,
        expected_trace,
        bound,
        ..Conditions::default()
    };
    let all = [ee_full, ee_residual, expected_trace, bound];
    Ok(WinVerdict {
        win: all.iter().all(|c| *c == Some(true)),
        rule_set: RuleSet::DimbaseDirect,
        conditions,
        indeterminate: indeterminate && !all.contains(&Some(false)),
    })
}

/// Numerical conditions (L), (H), (LH), (C), (D4), (D3) and the rule set for `d`.
pub fn win_check(spec: SpecializedSpec) -> Result<WinVerdict, NumerologyError> {
    let SystemSpec { d, n, l } = spec.base;
    let h = spec.h;
    require(n >= 3 && d >= 3 && l > h, || {
        format!("need n >= 3, d >= 3, l > h; got d={d}, n={n}, l={l}, h={h}")
    })?;
    let (di, ni) = (i64::from(d), i64::from(n));
    let lb = BigInt::from(l);
    let hb = BigInt::from(h);
    let gap = BigInt::from(l - h);

    let cond_l = lb < ah_ceiling(d, n);
    let trace_count = bin(ni - 1 + di, ni - 1);
    let cond_h = hb < kdn(ni - 1 + di, ni - 1, ni)
        || (&trace_count % ni == BigInt::zero()
            && hb == &trace_count / ni
            && ah_status(SystemSpec { d, n: n - 1, l: h }).tag != AhTag::Exceptional);
    let cond_lh = gap < ah_ceiling(d - 1, n);
    let cond_c = bin(ni + di - 1, ni) - BigInt::from(n + 1) * &gap - &hb > BigInt::zero();
    let cond_d4 = gap > BigInt::from(n);
    let cond_d3 = d3_bound(n, l) && h + 1 == l;

    let conditions = Conditions {
        l: Some(cond_l),
        h: Some(cond_h),
        lh: Some(cond_lh),
        c: Some(cond_c),
        d4: Some(cond_d4),
        d3: Some(cond_d3),
        ..Conditions::default()
    };
    let (rule_set, win) = match d {
        3 => (RuleSet::D3, cond_d3),
        4 => (RuleSet::D4, cond_l && cond_h && cond_lh && cond_c && cond_d4),
        _ => (RuleSet::DGe5, cond_l && cond_h && cond_lh && cond_c),
    };
    Ok(WinVerdict {
        win,
        rule_set,
        conditions,
        indeterminate: false,
    })
}

/// `l < C(n+3,n)/(n+1) - (n+2)/3 + 1`, exactly.
fn d3_bound(n: u32, l: u32) -> bool {
    let ni = i64::from(n);
    let rhs = BigRational::new(bin(ni + 3, ni), BigInt::from(ni + 1))
        - BigRational::new(BigInt::from(ni + 2), BigInt::from(3))
        + BigRational::from_integer(BigInt::from(1));
    BigRational::from_integer(BigInt::from(l)) < rhs
}

fn l_of(d: i64, n: i64) -> BigInt {
    kdn(n + d + 1, n, n + 1) - kdn(n + d, n - 1, n)
}

/// `(l_d, h_d)` with `h_d = l_d - l_{d-1}`, unbounded.
pub fn lh_params_exact(d: u32, n: u32) -> Result<(BigInt, BigInt), NumerologyError> {
    require(d >= 4 && n >= 3, || {
        format!("need d >= 4, n >= 3; got d={d}, n={n}")
    })?;
    let (d, n) = (i64::from(d), i64::from(n));
    let l = l_of(d, n);
    let h = &l - l_of(d - 1, n);
    Ok((l, h))
}

/// [`lh_params_exact`] as machine integers.
pub fn lh_params(d: u32, n: u32) -> Result<(i64, i64), NumerologyError> {
    let (l, h) = lh_params_exact(d, n)?;
    Ok((try_i64(l)?, try_i64(h)?))
}

/// `C(n+d-1,n) - (n+1)(l-h) - h` at `lh_params(d, n)`.
pub fn delta(d: u32, n: u32) -> Result<i64, NumerologyError> {
    let (l, h) = lh_params_exact(d, n)?;
    let v = bin(i64::from(n + d - 1), i64::from(n)) - BigInt::from(n + 1) * (&l - &h) - h;
    try_i64(v)
}

/// The fractional-part combinations `(fr(h), fr(l))`.
pub fn fr_values(d: u32, n: u32) -> Result<(BigRational, BigRational), NumerologyError> {
    require(d >= 4 && n >= 3, || {
        format!("need d >= 4, n >= 3; got d={d}, n={n}")
    })?;
    let f = |a: u32, b: u32| frup(a, b).value().clone();
    let fr_l = f(n, d + 1) - f(n - 1, d + 1);
    let fr_h = &fr_l - f(n, d) + f(n - 1, d);
    Ok((fr_h, fr_l))
}

/// Numerical conditions under which a general member of `G_{d,n,l}` has only nodes.
pub fn th_can_applies(spec: SystemSpec) -> bool {
    let SystemSpec { d, n, l } = spec;
    if n < 3 {
        return false;
    }
    match d {
        3 => d3_bound(n, l),
        d if d >= 4 => lh_params_exact(d, n).is_ok_and(|(ld, _)| ld == BigInt::from(l)),
        _ => false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FcCase {
    L0,
    L1,
    L2,
    None,
}

/// Which of the three point counts `l_0, l_1, l_2` matches `l` in degree `big_d`.
pub fn th_fc_applies(big_d: u32, n: u32, l: u32) -> Result<FcCase, NumerologyError> {
    require(big_d >= 4 && n >= 3, || {
        format!("need D >= 4, n >= 3; got D={big_d}, n={n}")
    })?;
    let d = big_d - 1;
    let top = ah_ceiling(d + 1, n);
    let lb = BigInt::from(l);
    let f = |a: u32, b: u32| frup(a, b).value().clone();

    let side0 = BigRational::from_integer(BigInt::from(n)) * f(n - 1, d + 1)
        - BigRational::from_integer(BigInt::from(n + 1)) * f(n, d + 1)
        + BigRational::from_integer(BigInt::from(1));
    if lb == &top - 1 && side0.is_positive() {
        return Ok(FcCase::L0);
    }
    if lb == &top - 2 {
        return Ok(FcCase::L1);
    }
    if lb == &top - 1 && frup(n - 1, d + 1).is_zero() && (d >= 4 || n >= 6) {
        return Ok(FcCase::L2);
    }
    Ok(FcCase::None)
}

/// An explicit `h` for a small case, with the rule that certifies it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FcOverride {
    /// Target degree of the conclusion.
    pub big_d: u32,
    pub n: u32,
    pub case: FcCase,
    pub h: u32,
    pub rule: RuleSet,
}

pub const FC_OVERRIDES: &[FcOverride] = &[
    FcOverride {
        big_d: 4,
        n: 3,
        case: FcCase::L1,
        h: 3,
        rule: RuleSet::ExplicitOverride,
    },
    FcOverride {
        big_d: 4,
        n: 4,
        case: FcCase::L1,
        h: 8,
        rule: RuleSet::DimbaseDirect,
    },
];

/// The specialization used to certify a matched case, with its verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FcCertificate {
    pub case: FcCase,
    pub spec: SpecializedSpec,
    pub verdict: WinVerdict,
}

pub fn fc_certificate(
    big_d: u32,
    n: u32,
    l: u32,
) -> Result<Option<FcCertificate>, NumerologyError> {
    fc_inner(big_d, n, l, None)
}

pub fn fc_certificate_with(
    big_d: u32,
    n: u32,
    l: u32,
    oracle: &mut dyn FnMut(SystemSpec) -> i64,
) -> Result<Option<FcCertificate>, NumerologyError> {
    fc_inner(big_d, n, l, Some(oracle))
}

fn fc_inner(
    big_d: u32,
    n: u32,
    l: u32,
    oracle: Option<&mut dyn FnMut(SystemSpec) -> i64>,
) -> Result<Option<FcCertificate>, NumerologyError> {
    let case = th_fc_applies(big_d, n, l)?;
    if case == FcCase::None {
        return Ok(None);
    }
    let (d, ni) = (i64::from(big_d - 1), i64::from(n));
    let over = FC_OVERRIDES
        .iter()
        .find(|o| o.big_d == big_d && o.n == n && o.case == case);
    let h = match over {
        Some(o) => o.h,
        None => {
            let h = match case {
                FcCase::L2 => bin(ni + d, ni - 1) / ni,
                _ => kdn(ni + d, ni - 1, ni) - 1,
            };
            u32::try_from(to_i64(&h)).expect("h fits in u32")
        }
    };
    let spec = SpecializedSpec::of(big_d, n, l, h)?;
    let verdict = match over.map(|o| o.rule) {
        Some(RuleSet::DimbaseDirect) => match oracle {
            Some(f) => dimbase_check_with(spec, f)?,
            None => dimbase_check(spec)?,
        },
        Some(rule) => WinVerdict {
            rule_set: rule,
            ..win_check(spec)?
        },
        None => win_check(spec)?,
    };
    Ok(Some(FcCertificate {
        case,
        spec,
        verdict,
    }))
}
