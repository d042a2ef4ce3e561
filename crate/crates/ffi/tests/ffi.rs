use std::ffi::{CStr, CString};
use std::ptr;

use superleib_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    sl_string_free(p);
    s
}

unsafe fn last_error() -> String {
    CStr::from_ptr(sl_last_error()).to_str().unwrap().to_string()
}

#[test]
fn parse_query_and_free() {
    unsafe {
        let mut a = ptr::null_mut();
        let text = cstr("dims 1 2\n[y1, x1] = y2\n");
        assert_eq!(sl_algebra_parse(text.as_ptr(), &mut a), SlStatus::Ok);
        let (mut n, mut m) = (0, 0);
        assert_eq!(sl_algebra_dims(a, &mut n, &mut m), SlStatus::Ok);
        assert_eq!((n, m), (1, 2));
        let mut v = 99;
        assert_eq!(sl_algebra_violation_count(a, &mut v), SlStatus::Ok);
        assert_eq!(v, 0);
        let mut l = 0;
        assert_eq!(sl_algebra_nilindex(a, &mut l), SlStatus::Ok);
        assert_eq!(l, 3);
        let mut s = ptr::null_mut();
        assert_eq!(sl_algebra_serialize(a, &mut s), SlStatus::Ok);
        assert_eq!(take_string(s), "dims 1 2\n[y1, x1] = y2\n");
        assert_eq!(sl_algebra_charseq(a, 8, 0, &mut s), SlStatus::Ok);
        assert_eq!(take_string(s), "(1|2)");
        assert_eq!(sl_algebra_fingerprint(a, &mut s), SlStatus::Ok);
        assert!(take_string(s).starts_with("series=(1|2),(0|1);nilindex=3;"));
        sl_algebra_free(a);
        sl_algebra_free(ptr::null_mut());
        sl_string_free(ptr::null_mut());
    }
}

#[test]
fn families_through_the_abi() {
    unsafe {
        let mut a = ptr::null_mut();
        let tag = cstr("L");
        assert_eq!(sl_family_build(tag.as_ptr(), 4, 3, ptr::null(), &mut a), SlStatus::Ok);
        let mut l = 0;
        sl_algebra_nilindex(a, &mut l);
        assert_eq!(l, 7);
        sl_algebra_free(a);
        let params = cstr("1, -1, 1/2");
        assert_eq!(sl_family_build(tag.as_ptr(), 4, 3, params.as_ptr(), &mut a), SlStatus::FamilyError);
        assert!(last_error().contains("parameters"));
        let bogus = cstr("NOPE");
        assert_eq!(sl_family_build(bogus.as_ptr(), 4, 3, ptr::null(), &mut a), SlStatus::FamilyError);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut a = ptr::null_mut();
        let text = cstr("dims 1 1\n[y1, y1] = y1\n");
        assert_eq!(sl_algebra_parse(text.as_ptr(), &mut a), SlStatus::ParseError);
        assert!(last_error().starts_with("line 2"), "{}", last_error());
        assert!(a.is_null());
        assert_eq!(sl_algebra_parse(ptr::null(), &mut a), SlStatus::NullPointer);
        let mut n = 0;
        assert_eq!(sl_algebra_dims(ptr::null(), &mut n, &mut n), SlStatus::NullPointer);

        let text = cstr("dims 1 0\n[x1, x1] = x1\n");
        assert_eq!(sl_algebra_parse(text.as_ptr(), &mut a), SlStatus::Ok);
        assert_eq!(last_error(), "");
        assert_eq!(sl_algebra_nilindex(a, &mut n), SlStatus::NotNilpotent);
        let mut s = ptr::null_mut();
        // L₀ = L₀², so no element lies outside the square
        assert_eq!(sl_algebra_charseq(a, 8, 0, &mut s), SlStatus::Undefined);
        sl_algebra_free(a);
    }
}

#[test]
fn census_json() {
    unsafe {
        let coeffs = cstr("0,1,-1");
        let mut s = ptr::null_mut();
        assert_eq!(sl_census_json(1, 1, coeffs.as_ptr(), 2, &mut s), SlStatus::Ok);
        let report: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
        assert_eq!(report["schema_version"], 1);
        assert_eq!(report["valid"], 7);
        let coeffs = cstr("1,-1");
        assert_eq!(sl_census_json(1, 1, coeffs.as_ptr(), 1, &mut s), SlStatus::SearchError);
    }
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/superleib.h")).unwrap();
    for name in [
        "sl_last_error",
        "sl_algebra_parse",
        "sl_family_build",
        "sl_algebra_free",
        "sl_algebra_dims",
        "sl_algebra_violation_count",
        "sl_algebra_nilindex",
        "sl_algebra_serialize",
        "sl_algebra_fingerprint",
        "sl_algebra_charseq",
        "sl_census_json",
        "sl_string_free",
    ] {
        assert!(header.contains(&format!("{name}(")), "{name}");
    }
    assert!(header.contains("typedef struct SlAlgebra SlAlgebra;"));
    assert!(header.contains("SL_STATUS_NOT_NILPOTENT = 5"));
}
