//! C ABI over `waring-core`. Every call returns a [`WaringStatus`]; on failure a message is
//! available from [`waring_last_error`] on the same thread. A `prime` of 0 selects the
//! rationals.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_traits::ToPrimitive;
use waring_core::algebra::{Field, Scalar};
use waring_core::binary::{sylvester_certificate, BinaryForm};
use waring_core::interpolation::{kernel_dim, random_member, sample_config, PointConfig};
use waring_core::numerology::{
    ah_status, delta, expected_dim, frup, lh_params, th_fc_applies, waring_verdict, AhTag, FcCase,
    NumerologyError, SpecializedSpec, SystemSpec, UniquenessTag,
};
use waring_core::probes::{singularity_report, square_detect, veronese_secant_dim, Finiteness};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WaringStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Overflow = 3,
    Computation = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WaringAhTag {
    ExpectedEffective = 0,
    ExpectedEmpty = 1,
    Exceptional = 2,
    OutOfRange = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WaringUniqueness {
    Unique = 0,
    NotUnique = 1,
    NoCanonicalForm = 2,
    OutOfRange = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WaringFcCase {
    None = 0,
    L0 = 1,
    L1 = 2,
    L2 = 3,
}

/// Singularities of a random member at and away from its imposed points.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WaringSing {
    Nodes = 0,
    Curve = 1,
    Square = 2,
    Degenerate = 3,
}

/// A sampled double-point system: a spec plus one random point configuration.
pub struct WaringSystem {
    spec: SpecializedSpec,
    config: PointConfig,
    seed: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(WaringStatus, String);

impl From<NumerologyError> for Failure {
    fn from(e: NumerologyError) -> Self {
        let status = match e {
            NumerologyError::Overflow(_) => WaringStatus::Overflow,
            NumerologyError::Precondition(_) => WaringStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure(WaringStatus::InvalidArgument, e.to_string())
}

fn failed(e: impl std::fmt::Display) -> Failure {
    Failure(WaringStatus::Computation, e.to_string())
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> WaringStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            WaringStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            WaringStatus::Panic
        }
    }
}

fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Failure> {
    // SAFETY: callers pass either null or a valid, writable pointer.
    unsafe { p.as_mut() }.ok_or(Failure(WaringStatus::NullPointer, "null output pointer".into()))
}

fn field_of(prime: u64) -> Result<Field, Failure> {
    if prime == 0 {
        Ok(Field::Rational)
    } else {
        Field::prime(prime).map_err(invalid)
    }
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn waring_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn waring_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// `C(n+d,n) - (n+1)l - 1`.
///
/// # Safety
/// Output pointers are null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn waring_expected_dim(d: u32, n: u32, l: u32, dim: *mut i64) -> WaringStatus {
    guard(|| {
        let spec = SystemSpec::new(d, n, l)?;
        *out(dim)? = expected_dim(spec);
        Ok(())
    })
}

/// Predicted dimension of `G(d,n,l)` with its classification.
///
/// # Safety
/// Output pointers are null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn waring_ah_status(
    d: u32,
    n: u32,
    l: u32,
    tag: *mut WaringAhTag,
    dim: *mut i64,
) -> WaringStatus {
    guard(|| {
        let s = ah_status(SystemSpec::new(d, n, l)?);
        *out(tag)? = match s.tag {
            AhTag::ExpectedEffective => WaringAhTag::ExpectedEffective,
            AhTag::ExpectedEmpty => WaringAhTag::ExpectedEmpty,
            AhTag::Exceptional => WaringAhTag::Exceptional,
            AhTag::OutOfTheoremRange => WaringAhTag::OutOfRange,
        };
        *out(dim)? = s.dim;
        Ok(())
    })
}

/// Fractional part `num/den` with `den = a + 1`.
///
/// # Safety
/// Output pointers are null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn waring_frup(a: u32, b: u32, num: *mut u64, den: *mut u64) -> WaringStatus {
    guard(|| {
        let v = frup(a, b);
        let to_u64 = |x: &num_bigint::BigInt| {
            x.to_u64()
                .ok_or_else(|| Failure(WaringStatus::Overflow, "value exceeds 64 bits".into()))
        };
        *out(num)? = to_u64(v.value().numer())?;
        *out(den)? = to_u64(v.value().denom())?;
        Ok(())
    })
}

/// The pair `(l, h)` used for the degree-`d` step in `P^n`.
///
/// # Safety
/// Output pointers are null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn waring_lh_params(d: u32, n: u32, l: *mut i64, h: *mut i64) -> WaringStatus {
    guard(|| {
        let (lv, hv) = lh_params(d, n)?;
        *out(l)? = lv;
        *out(h)? = hv;
        Ok(())
    })
}

/// Slack `delta(d,n)` of the degree-`d` step.
///
/// # Safety
/// Output pointers are null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn waring_delta(d: u32, n: u32, value: *mut i64) -> WaringStatus {
    guard(|| {
        *out(value)? = delta(d, n)?;
        Ok(())
    })
}

/// Which of the three `l` cases of the degree-`2D` construction applies.
///
/// # Safety
/// Output pointers are null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn waring_fc_case(big_d: u32, n: u32, l: u32, case: *mut WaringFcCase) -> WaringStatus {
    guard(|| {
        *out(case)? = match th_fc_applies(big_d, n, l)? {
            FcCase::None => WaringFcCase::None,
            FcCase::L0 => WaringFcCase::L0,
            FcCase::L1 => WaringFcCase::L1,
            FcCase::L2 => WaringFcCase::L2,
        };
        Ok(())
    })
}

/// Uniqueness verdict; `k` is written only when `has_k` comes back true.
///
/// # Safety
/// Output pointers are null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn waring_uniqueness(
    d: u32,
    n: u32,
    verdict: *mut WaringUniqueness,
    has_k: *mut bool,
    k: *mut i64,
) -> WaringStatus {
    guard(|| {
        if d == 0 || n == 0 {
            return Err(invalid("need d, n >= 1"));
        }
        let v = waring_verdict(d, n);
        *out(verdict)? = match v.tag {
            UniquenessTag::Unique => WaringUniqueness::Unique,
            UniquenessTag::NotUnique => WaringUniqueness::NotUnique,
            UniquenessTag::NoCanonicalForm => WaringUniqueness::NoCanonicalForm,
            UniquenessTag::OutOfTheoremRange => WaringUniqueness::OutOfRange,
        };
        *out(has_k)? = v.k.is_some();
        if let Some(kv) = v.k {
            *out(k)? = kv;
        }
        Ok(())
    })
}

/// Samples `H(d,n,l,h)` (`h = 0` for `G(d,n,l)`) and stores a handle in `system`.
///
/// # Safety
/// Output pointers are null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn waring_system_new(
    d: u32,
    n: u32,
    l: u32,
    h: u32,
    prime: u64,
    seed: u64,
    system: *mut *mut WaringSystem,
) -> WaringStatus {
    guard(|| {
        let slot = out(system)?;
        let spec = SpecializedSpec::of(d, n, l, h)?;
        let config = sample_config(spec, field_of(prime)?, seed).map_err(invalid)?;
        *slot = Box::into_raw(Box::new(WaringSystem { spec, config, seed }));
        Ok(())
    })
}

/// Releases a handle from [`waring_system_new`]. Null is ignored.
///
/// # Safety
/// `system` is null or came from [`waring_system_new`] and has not been freed.
#[no_mangle]
pub unsafe extern "C" fn waring_system_free(system: *mut WaringSystem) {
    if !system.is_null() {
        // SAFETY: ownership returns from the caller per the contract above.
        drop(unsafe { Box::from_raw(system) });
    }
}

fn handle<'a>(system: *const WaringSystem) -> Result<&'a WaringSystem, Failure> {
    // SAFETY: callers pass null or a live handle.
    unsafe { system.as_ref() }.ok_or(Failure(WaringStatus::NullPointer, "null handle".into()))
}

/// Measured projective dimension at the sampled configuration; `-1` means empty.
///
/// # Safety
/// `system` is null or a live handle; output pointers are null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn waring_system_dim(system: *const WaringSystem, dim: *mut i64) -> WaringStatus {
    guard(|| {
        let s = handle(system)?;
        *out(dim)? = kernel_dim(s.spec, &s.config).map_err(failed)? as i64 - 1;
        Ok(())
    })
}

/// Singularities of a random member of a `G(d,n,l)` handle.
///
/// # Safety
/// `system` is null or a live handle; output pointers are null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn waring_system_sing(
    system: *const WaringSystem,
    slices: usize,
    sing: *mut WaringSing,
) -> WaringStatus {
    guard(|| {
        let s = handle(system)?;
        let slot = out(sing)?;
        if s.spec.h != 0 || s.spec.base.d < 2 {
            return Err(invalid("need h = 0 and d >= 2"));
        }
        let f = random_member(s.spec, &s.config, s.seed + 1).map_err(failed)?;
        if f.degree() % 2 == 0 && square_detect(&f).is_some() {
            *slot = WaringSing::Square;
            return Ok(());
        }
        let points: Vec<Vec<Scalar>> = s.config.points().cloned().collect();
        let r = singularity_report(&f, &points, slices, s.seed).map_err(failed)?;
        *slot = if r.finiteness == Finiteness::Infinite {
            WaringSing::Curve
        } else if r.all_nodes(f.n()) {
            WaringSing::Nodes
        } else {
            WaringSing::Degenerate
        };
        Ok(())
    })
}

/// Measured and expected dimension of the `k`-secant variety of the Veronese.
///
/// # Safety
/// Output pointers are null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn waring_secant_dim(
    d: u32,
    n: u32,
    k: u32,
    prime: u64,
    trials: u32,
    seed: u64,
    measured: *mut i64,
    expected: *mut i64,
) -> WaringStatus {
    guard(|| {
        let r = veronese_secant_dim(d, n, k, field_of(prime)?, trials, seed).map_err(invalid)?;
        *out(measured)? = r.measured_dim;
        *out(expected)? = r.expected_dim;
        Ok(())
    })
}

/// Catalecticant certificate of the odd-degree binary form `sum C(d,i) c_i X^{d-i} Y^i`.
///
/// # Safety
/// `coeffs` points to `len` readable values; output pointers are null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn waring_sylvester(
    coeffs: *const i64,
    len: usize,
    unique: *mut bool,
    summands: *mut u32,
) -> WaringStatus {
    guard(|| {
        if coeffs.is_null() {
            return Err(Failure(WaringStatus::NullPointer, "null coefficients".into()));
        }
        // SAFETY: the caller guarantees `len` readable values.
        let c = unsafe { std::slice::from_raw_parts(coeffs, len) };
        let f = BinaryForm::from_i64(Field::Rational, c).map_err(invalid)?;
        let cert = sylvester_certificate(&f).map_err(invalid)?;
        *out(unique)? = cert.unique && cert.apolar;
        *out(summands)? = cert.s;
        Ok(())
    })
}
