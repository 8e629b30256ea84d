use std::ffi::{c_char, CStr, CString};
use std::process::Command;
use std::ptr;

use ellipta_ffi::*;

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    ellipta_string_free(s);
    out
}

#[test]
fn j8_by_every_route() {
    for route in [EllipRoute::Operator, EllipRoute::Recurrence, EllipRoute::Viennot, EllipRoute::Series] {
        unsafe {
            let mut p = ptr::null_mut();
            assert_eq!(ellipta_j(8, route, &mut p), EllipStatus::Ok);
            let mut s = ptr::null_mut();
            assert_eq!(ellipta_poly_to_string(p, &mut s), EllipStatus::Ok);
            assert_eq!(take(s), "1 + 408x + 912x^2 + 64x^3");
            let mut d = 0i64;
            assert_eq!(ellipta_poly_degree(p, &mut d), EllipStatus::Ok);
            assert_eq!(d, 3);
            let mut c = ptr::null_mut();
            assert_eq!(ellipta_poly_coeff(p, 2, &mut c), EllipStatus::Ok);
            assert_eq!(take(c), "912");
            ellipta_poly_free(p);
        }
    }
}

#[test]
fn even_decomposition_handles() {
    unsafe {
        let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(ellipta_j_even_decomposition(3, &mut a, &mut b), EllipStatus::Ok);
        let (mut sa, mut sb) = (ptr::null_mut(), ptr::null_mut());
        ellipta_poly_to_json(a, &mut sa);
        ellipta_poly_to_json(b, &mut sb);
        assert_eq!(take(sa), r#"{"var":"x","coeffs":["1","345","345","1"]}"#);
        assert_eq!(take(sb), r#"{"var":"x","coeffs":["63","567","63"]}"#);
        ellipta_poly_free(a);
        ellipta_poly_free(b);
    }
}

#[test]
fn analysis_json() {
    unsafe {
        let text = CString::new("1 + 408x + 912x^2 + 64x^3").unwrap();
        let mut p = ptr::null_mut();
        assert_eq!(ellipta_poly_parse(text.as_ptr(), &mut p), EllipStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(ellipta_analyze(p, 3, &mut out), EllipStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["bi_gamma_positive"], serde_json::json!(true));
        assert_eq!(v["alternatingly_increasing"], serde_json::json!(true));
        ellipta_poly_free(p);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut p = ptr::null_mut();
        let bad = CString::new("1 + y").unwrap();
        assert_eq!(ellipta_poly_parse(bad.as_ptr(), &mut p), EllipStatus::Parse);
        assert!(p.is_null());
        assert!(!ellipta_last_error().is_null());
        assert_eq!(ellipta_poly_parse(ptr::null(), &mut p), EllipStatus::NullPointer);
        assert_eq!(ellipta_j(-1, EllipRoute::Viennot, &mut p), EllipStatus::InvalidArgument);
        let msg = CStr::from_ptr(ellipta_last_error()).to_str().unwrap();
        assert!(msg.contains("nonnegative"), "{msg}");
        let suite = CString::new("nope").unwrap();
        let mut passed = 0;
        assert_eq!(ellipta_verify(suite.as_ptr(), -1, &mut passed, ptr::null_mut()), EllipStatus::InvalidArgument);
        ellipta_poly_free(ptr::null_mut());
        ellipta_string_free(ptr::null_mut());
    }
}

#[test]
fn verify_suite() {
    unsafe {
        let suite = CString::new("thm2").unwrap();
        let mut passed = 0;
        let mut report = ptr::null_mut();
        assert_eq!(ellipta_verify(suite.as_ptr(), 10, &mut passed, &mut report), EllipStatus::Ok);
        assert_eq!(passed, 1);
        assert!(take(report).ends_with("PASS thm2\n"));
    }
}

#[test]
fn header_compiles_as_c() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let status = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-I"])
        .arg(format!("{dir}/include"))
        .arg(format!("{dir}/examples/j8.c"))
        .status()
        .expect("a C compiler on PATH");
    assert!(status.success());
}
