use std::ffi::{CStr, CString};
use std::ptr;

use irrlab_ffi::*;

fn builtin(name: &str) -> *mut IrrSystem {
    let name = CString::new(name).unwrap();
    let mut sys = ptr::null_mut();
    assert_eq!(
        unsafe { irr_system_builtin(name.as_ptr(), &mut sys) },
        IrrStatus::Ok
    );
    assert!(!sys.is_null());
    sys
}

fn last_error() -> String {
    let p = irr_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn or_get_measures() {
    let sys = builtin("OR-GET");
    unsafe {
        let mut n = 0usize;
        assert_eq!(irr_system_node_count(sys, &mut n), IrrStatus::Ok);
        assert_eq!(n, 2);

        let mut next = 0usize;
        assert_eq!(irr_system_next_state(sys, 0b01, &mut next), IrrStatus::Ok);
        assert_eq!(next, 0b10);

        let mut v = 0.0;
        assert_eq!(irr_output_probability(sys, 0b11, &mut v), IrrStatus::Ok);
        assert_eq!(v, 0.5);
        assert_eq!(irr_ei(sys, 0b00, &mut v), IrrStatus::Ok);
        assert!((v - 2.0).abs() < 1e-12);
        assert_eq!(irr_phi(sys, 0b10, IRR_MODE_STANDARD, &mut v), IrrStatus::Ok);
        assert!((v - 6f64.log2()).abs() < 1e-12);
        assert_eq!(
            irr_bracket_phi(sys, IRR_MODE_STANDARD, &mut v),
            IrrStatus::Ok
        );
        assert!((v - 1.189).abs() < 5e-4);
        assert_eq!(irr_mutual_information(sys, &mut v), IrrStatus::Ok);
        assert!((v - 1.5).abs() < 1e-12);

        let (mut lo, mut hi) = (0.0, 0.0);
        assert_eq!(irr_bracket_psi(sys, &mut lo, &mut hi), IrrStatus::Ok);
        assert!(lo <= hi + 1e-12);
        assert!((hi - 0.5).abs() < 1e-12);
        assert_eq!(irr_psi_bounds(sys, 0b00, &mut lo, &mut hi), IrrStatus::Ok);
        assert!(lo <= hi + 1e-12);
        assert!(irr_last_error_message().is_null());

        irr_system_free(sys);
    }
}

#[test]
fn unreachable_and_bad_arguments() {
    let sys = builtin("OR-GET");
    unsafe {
        let mut v = 0.0;
        assert_eq!(
            irr_phi(sys, 0b01, IRR_MODE_STANDARD, &mut v),
            IrrStatus::Unreachable
        );
        assert!(last_error().contains("unreachable"));
        assert_eq!(irr_ei(sys, 7, &mut v), IrrStatus::InvalidArg);
        assert_eq!(irr_phi(sys, 0, 9, &mut v), IrrStatus::InvalidArg);
        assert_eq!(irr_ei(sys, 0, ptr::null_mut()), IrrStatus::Null);
        assert_eq!(irr_ei(ptr::null(), 0, &mut v), IrrStatus::Null);
        let mut lo = 0.0;
        assert_eq!(
            irr_psi_bounds(sys, 0, &mut lo, ptr::null_mut()),
            IrrStatus::Null
        );
        irr_system_free(sys);
        irr_system_free(ptr::null_mut());
    }
}

#[test]
fn parse_errors_and_utf8() {
    let mut sys = ptr::null_mut();
    unsafe {
        let bad = CString::new("nodes 2\nthreshold 0 1\nedge 0 5").unwrap();
        assert_eq!(
            irr_system_from_spec(bad.as_ptr(), &mut sys),
            IrrStatus::Parse
        );
        assert!(sys.is_null());
        assert!(last_error().contains("line"));

        let bad = CString::new("00 -> 00\n01 -> 00").unwrap();
        assert_eq!(
            irr_system_from_table(bad.as_ptr(), &mut sys),
            IrrStatus::Parse
        );

        let invalid = [0xffu8, 0xfe, 0];
        assert_eq!(
            irr_system_from_table(invalid.as_ptr().cast(), &mut sys),
            IrrStatus::Utf8
        );
        assert_eq!(irr_system_from_spec(ptr::null(), &mut sys), IrrStatus::Null);

        let unknown = CString::new("NOPE").unwrap();
        assert_eq!(
            irr_system_builtin(unknown.as_ptr(), &mut sys),
            IrrStatus::InvalidArg
        );
    }
}

#[test]
fn spec_table_and_compose() {
    unsafe {
        let spec =
            CString::new("nodes 2\nthreshold 0 2\nthreshold 1 1\nedge 0 0\nedge 1 0\nedge 0 1")
                .unwrap();
        let mut and_get = ptr::null_mut();
        assert_eq!(
            irr_system_from_spec(spec.as_ptr(), &mut and_get),
            IrrStatus::Ok
        );

        let table = CString::new("00 -> 00\n01 -> 00\n10 -> 00\n11 -> 11").unwrap();
        let mut and_and = ptr::null_mut();
        assert_eq!(
            irr_system_from_table(table.as_ptr(), &mut and_and),
            IrrStatus::Ok
        );

        let mut composed = ptr::null_mut();
        assert_eq!(irr_system_compose(and_get, 2, &mut composed), IrrStatus::Ok);
        for x in 0..4 {
            let (mut a, mut b) = (0usize, 0usize);
            assert_eq!(irr_system_next_state(composed, x, &mut a), IrrStatus::Ok);
            assert_eq!(irr_system_next_state(and_and, x, &mut b), IrrStatus::Ok);
            assert_eq!(a, b);
        }
        let mut bad = ptr::null_mut();
        assert_eq!(
            irr_system_compose(and_get, 0, &mut bad),
            IrrStatus::InvalidArg
        );

        for s in [and_get, and_and, composed] {
            irr_system_free(s);
        }
    }
}

#[test]
fn reports() {
    let sys = builtin("AND-ZERO");
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(irr_report(sys, IRR_FORMAT_MD, &mut s), IrrStatus::Ok);
        let md = CStr::from_ptr(s).to_str().unwrap().to_owned();
        irr_string_free(s);
        assert!(md.contains("| 01 | - | - | - | - | - | - |"), "{md}");

        assert_eq!(irr_report(sys, IRR_FORMAT_JSON, &mut s), IrrStatus::Ok);
        let json = CStr::from_ptr(s).to_str().unwrap().to_owned();
        irr_string_free(s);
        assert!(json.contains("\"network\": \"AND-ZERO\""));

        assert_eq!(irr_report(sys, 42, &mut s), IrrStatus::InvalidArg);
        irr_string_free(ptr::null_mut());
        irr_system_free(sys);
    }
}

#[test]
fn errors_are_per_thread() {
    let sys = builtin("OR-GET");
    let addr = sys as usize;
    let mut v = 0.0;
    assert_eq!(
        unsafe { irr_phi(sys, 0b01, IRR_MODE_STANDARD, &mut v) },
        IrrStatus::Unreachable
    );
    std::thread::spawn(move || {
        assert!(irr_last_error_message().is_null());
        let mut v = 0.0;
        let sys = addr as *const IrrSystem;
        assert_eq!(unsafe { irr_ei(sys, 0, &mut v) }, IrrStatus::Ok);
    })
    .join()
    .unwrap();
    assert!(!irr_last_error_message().is_null());
    unsafe { irr_system_free(sys) };
}
