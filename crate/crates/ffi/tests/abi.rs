use std::ffi::CStr;
use std::ptr;

use waring_ffi::*;

const P: u64 = 2_147_483_647;

fn last_error() -> String {
    let p = waring_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn version_is_the_crate_version() {
    let v = unsafe { CStr::from_ptr(waring_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn numerology_calls() {
    let mut dim = 0i64;
    assert_eq!(unsafe { waring_expected_dim(4, 2, 5, &mut dim) }, WaringStatus::Ok);
    assert_eq!(dim, -1);
    assert!(waring_last_error().is_null());

    let mut tag = WaringAhTag::ExpectedEmpty;
    assert_eq!(unsafe { waring_ah_status(4, 2, 5, &mut tag, &mut dim) }, WaringStatus::Ok);
    assert_eq!((tag, dim), (WaringAhTag::Exceptional, 0));

    let (mut num, mut den) = (0u64, 0u64);
    assert_eq!(unsafe { waring_frup(8, 6, &mut num, &mut den) }, WaringStatus::Ok);
    assert_eq!((num, den), (1, 3));

    let (mut l, mut h) = (0i64, 0i64);
    assert_eq!(unsafe { waring_lh_params(5, 4, &mut l, &mut h) }, WaringStatus::Ok);
    assert_eq!((l - h, h), (12, 9));
    assert_eq!(unsafe { waring_delta(7, 3, &mut dim) }, WaringStatus::Ok);
    assert_eq!(dim, 3);

    let mut case = WaringFcCase::L0;
    assert_eq!(unsafe { waring_fc_case(6, 9, 500, &mut case) }, WaringStatus::Ok);
    assert_eq!(case, WaringFcCase::None);
}

#[test]
fn uniqueness_call() {
    let mut v = WaringUniqueness::OutOfRange;
    let mut has_k = false;
    let mut k = 0i64;
    assert_eq!(unsafe { waring_uniqueness(5, 2, &mut v, &mut has_k, &mut k) }, WaringStatus::Ok);
    assert_eq!((v, has_k, k), (WaringUniqueness::Unique, true, 6));
    assert_eq!(unsafe { waring_uniqueness(6, 3, &mut v, &mut has_k, &mut k) }, WaringStatus::Ok);
    assert_eq!((v, k + 1), (WaringUniqueness::NotUnique, 21));
}

#[test]
fn errors_set_status_and_message() {
    let mut dim = 0i64;
    assert_eq!(
        unsafe { waring_expected_dim(0, 2, 1, &mut dim) },
        WaringStatus::InvalidArgument
    );
    assert!(last_error().contains("d, n >= 1"));
    assert_eq!(
        unsafe { waring_expected_dim(3, 2, 1, ptr::null_mut()) },
        WaringStatus::NullPointer
    );
    let mut sys = ptr::null_mut();
    assert_eq!(
        unsafe { waring_system_new(3, 2, 1, 0, 7, 0, &mut sys) },
        WaringStatus::InvalidArgument
    );
    assert!(sys.is_null());
    assert_eq!(unsafe { waring_system_dim(ptr::null(), &mut dim) }, WaringStatus::NullPointer);
    let (mut num, mut den) = (0u64, 0u64);
    assert_eq!(unsafe { waring_frup(3, 4, &mut num, &mut den) }, WaringStatus::Ok);
    assert!(waring_last_error().is_null());
}

#[test]
fn system_handle_lifecycle() {
    let mut sys = ptr::null_mut();
    assert_eq!(unsafe { waring_system_new(4, 3, 8, 0, P, 1, &mut sys) }, WaringStatus::Ok);
    assert!(!sys.is_null());
    let mut dim = 0i64;
    assert_eq!(unsafe { waring_system_dim(sys, &mut dim) }, WaringStatus::Ok);
    assert_eq!(dim, 2);
    let mut sing = WaringSing::Nodes;
    assert_eq!(unsafe { waring_system_sing(sys, 4, &mut sing) }, WaringStatus::Ok);
    assert_eq!(sing, WaringSing::Curve);
    unsafe { waring_system_free(sys) };
    unsafe { waring_system_free(ptr::null_mut()) };

    assert_eq!(unsafe { waring_system_new(4, 2, 5, 0, P, 2, &mut sys) }, WaringStatus::Ok);
    assert_eq!(unsafe { waring_system_dim(sys, &mut dim) }, WaringStatus::Ok);
    assert_eq!(dim, 0);
    assert_eq!(unsafe { waring_system_sing(sys, 4, &mut sing) }, WaringStatus::Ok);
    assert_eq!(sing, WaringSing::Square);
    unsafe { waring_system_free(sys) };

    assert_eq!(unsafe { waring_system_new(3, 3, 4, 0, 0, 3, &mut sys) }, WaringStatus::Ok);
    assert_eq!(unsafe { waring_system_dim(sys, &mut dim) }, WaringStatus::Ok);
    assert_eq!(dim, 3);
    unsafe { waring_system_free(sys) };
}

#[test]
fn secant_and_sylvester_calls() {
    let (mut m, mut e) = (0i64, 0i64);
    assert_eq!(unsafe { waring_secant_dim(4, 2, 4, P, 2, 0, &mut m, &mut e) }, WaringStatus::Ok);
    assert_eq!((m, e), (13, 14));

    let coeffs = [3i64, -1, 4, 1, -5, 9, 2, -6];
    let mut unique = false;
    let mut s = 0u32;
    assert_eq!(
        unsafe { waring_sylvester(coeffs.as_ptr(), coeffs.len(), &mut unique, &mut s) },
        WaringStatus::Ok
    );
    assert!(unique);
    assert_eq!(s, 4);
    assert_eq!(
        unsafe { waring_sylvester(coeffs.as_ptr(), 3, &mut unique, &mut s) },
        WaringStatus::InvalidArgument
    );
}
