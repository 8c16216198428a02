use lconvex_ffi::*;
use std::ffi::{CStr, CString};
use std::ptr;

fn last_error() -> String {
    let p = lc_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn curve(desc: &str) -> *mut LcCurve {
    let d = CString::new(desc).unwrap();
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { lc_curve_from_descriptor(d.as_ptr(), &mut c) }, LcStatus::Ok, "{desc}");
    c
}

#[test]
fn version_is_the_crate_version() {
    let v = unsafe { CStr::from_ptr(lc_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn nu_classes_and_endpoints() {
    let want = [LcComponent::MinusConvex, LcComponent::Plus, LcComponent::MinusNonConvex];
    for (k, w) in want.iter().enumerate() {
        let mut c = ptr::null_mut();
        unsafe {
            assert_eq!(lc_curve_nu(k as f64 + 1.0, &mut c), LcStatus::Ok);
            let mut class = LcComponent::Plus;
            assert_eq!(lc_curve_classify(c, &mut class), LcStatus::Ok);
            assert_eq!(class, *w);
            let mut q = [0.0; 4];
            assert_eq!(lc_curve_phi(c, q.as_mut_ptr()), LcStatus::Ok);
            let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
            assert!((q[0] - sign).abs() < 1e-6, "{q:?}");
            lc_curve_free(c);
        }
    }
}

#[test]
fn eval_and_margin() {
    let mut c = ptr::null_mut();
    unsafe {
        assert_eq!(lc_curve_nu(1.0, &mut c), LcStatus::Ok);
        let mut j = [0.0; 9];
        assert_eq!(lc_curve_eval(c, 0.0, j.as_mut_ptr()), LcStatus::Ok);
        assert!((j[0] - 1.0).abs() < 1e-12 && j[1].abs() < 1e-12 && j[2].abs() < 1e-12);
        let mut m = 0.0;
        assert_eq!(lc_curve_margin(c, 1024, &mut m), LcStatus::Ok);
        assert!(m > 0.0);
        lc_curve_free(c);
    }
}

#[test]
fn flower_petals() {
    let c = curve("flower petals=3");
    let mut n = 0;
    assert_eq!(unsafe { lc_curve_is_flower(c, &mut n) }, LcStatus::Ok);
    assert_eq!(n, 3);
    unsafe { lc_curve_free(c) };
    let mut d = ptr::null_mut();
    let mut n = 7;
    unsafe {
        assert_eq!(lc_curve_g_plus_2(0.3, 0.4, &mut d), LcStatus::Ok);
        assert_eq!(lc_curve_is_flower(d, &mut n), LcStatus::Ok);
        lc_curve_free(d);
    }
    assert_eq!(n, 0);
}

#[test]
fn samples_round_trip() {
    let n = 512;
    let mut nu1 = ptr::null_mut();
    let mut xyz = Vec::new();
    unsafe {
        assert_eq!(lc_curve_nu(1.0, &mut nu1), LcStatus::Ok);
        for i in 0..=n {
            let mut j = [0.0; 9];
            assert_eq!(lc_curve_eval(nu1, i as f64 / n as f64, j.as_mut_ptr()), LcStatus::Ok);
            xyz.extend_from_slice(&j[..3]);
        }
        lc_curve_free(nu1);
    }
    let mut c = ptr::null_mut();
    unsafe {
        assert_eq!(lc_curve_from_samples(xyz.as_ptr(), n + 1, &mut c), LcStatus::Ok);
        let mut class = LcComponent::Plus;
        assert_eq!(lc_curve_classify(c, &mut class), LcStatus::Ok);
        assert_eq!(class, LcComponent::MinusConvex);
        lc_curve_free(c);
    }
    let bad = vec![2.0; 3 * 8];
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { lc_curve_from_samples(bad.as_ptr(), 8, &mut c) }, LcStatus::Parse);
    assert!(c.is_null());
}

#[test]
fn family_invariants() {
    let d = CString::new("g_plus_2 grid=48x48").unwrap();
    let mut f = ptr::null_mut();
    unsafe {
        assert_eq!(lc_family_from_descriptor(d.as_ptr(), &mut f), LcStatus::Ok);
        let (mut m1, mut m2) = (0, 0);
        assert_eq!(lc_family_grid(f, &mut m1, &mut m2), LcStatus::Ok);
        assert_eq!((m1, m2), (48, 48));
        let mut deg = 0;
        let mut integral = 0.0;
        assert_eq!(lc_family_degree(f, &mut deg, &mut integral), LcStatus::Ok);
        assert_eq!(deg, 1);
        assert!((integral - 1.0).abs() < 0.1);
        lc_family_free(f);
    }
    let d = CString::new("g_plus_2 grid=64x64").unwrap();
    let mut f = ptr::null_mut();
    unsafe {
        assert_eq!(lc_family_from_descriptor(d.as_ptr(), &mut f), LcStatus::Ok);
        let mut n = 0;
        assert_eq!(lc_family_count_f2(f, &mut n), LcStatus::Ok);
        assert_eq!(n, 1);
        lc_family_free(f);
    }
}

#[test]
fn coarse_degree_reports_non_integer() {
    let d = CString::new("g_plus_2 grid=8x8").unwrap();
    let mut f = ptr::null_mut();
    unsafe {
        assert_eq!(lc_family_from_descriptor(d.as_ptr(), &mut f), LcStatus::Ok);
        let mut deg = 0;
        assert_eq!(lc_family_degree(f, &mut deg, ptr::null_mut()), LcStatus::NonIntegerDegree);
        lc_family_free(f);
    }
    assert!(last_error().contains("not within 0.1"));
}

#[test]
fn errors_set_status_and_message() {
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { lc_curve_nu(-1.0, &mut c) }, LcStatus::NonPositiveSpeed);
    assert!(c.is_null());
    assert!(last_error().contains("speed"));

    assert_eq!(unsafe { lc_curve_g_plus_2(1.5, 0.0, &mut c) }, LcStatus::DomainError);

    let d = CString::new("nosuch x=1").unwrap();
    assert_eq!(unsafe { lc_curve_from_descriptor(d.as_ptr(), &mut c) }, LcStatus::Parse);

    let d = CString::new("great_circle").unwrap();
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { lc_family_from_descriptor(d.as_ptr(), &mut f) }, LcStatus::Parse);

    let open = curve("nu c=1.5");
    let mut class = LcComponent::Plus;
    assert_eq!(unsafe { lc_curve_classify(open, &mut class) }, LcStatus::NotClosed);
    unsafe { lc_curve_free(open) };
}

#[test]
fn null_arguments_are_rejected() {
    unsafe {
        assert_eq!(lc_curve_nu(1.0, ptr::null_mut()), LcStatus::NullPointer);
        assert_eq!(lc_curve_from_descriptor(ptr::null(), &mut ptr::null_mut()), LcStatus::NullPointer);
        let mut m = 0.0;
        assert_eq!(lc_curve_margin(ptr::null(), 64, &mut m), LcStatus::NullPointer);
        let mut q = [0.0; 4];
        assert_eq!(lc_curve_phi(ptr::null(), q.as_mut_ptr()), LcStatus::NullPointer);
        lc_curve_free(ptr::null_mut());
        lc_family_free(ptr::null_mut());
    }
    assert_eq!(last_error(), "null pointer argument");
}

#[test]
fn invalid_utf8_is_rejected() {
    let bytes = [0xffu8, 0xfe, 0];
    let mut c = ptr::null_mut();
    let st = unsafe { lc_curve_from_descriptor(bytes.as_ptr().cast(), &mut c) };
    assert_eq!(st, LcStatus::InvalidUtf8);
}

#[test]
fn header_declares_every_export() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/lconvex.h")).unwrap();
    for name in [
        "lc_version",
        "lc_last_error_message",
        "lc_curve_nu",
        "lc_curve_g_plus_2",
        "lc_curve_from_descriptor",
        "lc_curve_from_samples",
        "lc_curve_free",
        "lc_curve_eval",
        "lc_curve_margin",
        "lc_curve_classify",
        "lc_curve_phi",
        "lc_curve_is_flower",
        "lc_family_from_descriptor",
        "lc_family_free",
        "lc_family_degree",
        "lc_family_count_f2",
        "lc_family_grid",
        "typedef struct LcCurve LcCurve",
        "typedef struct LcFamily LcFamily",
        "LC_STATUS_NON_INTEGER_DEGREE = 24",
    ] {
        assert!(h.contains(name), "{name} missing from header");
    }
}
