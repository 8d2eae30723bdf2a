use std::ffi::{c_char, CStr, CString};
use std::ptr;

use naw_ffi::*;

fn last_error() -> String {
    let p = naw_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn group(expr: &str) -> *mut NawGroup {
    let src = CString::new(expr).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { naw_group_new(src.as_ptr(), &mut g) }, NawStatus::Ok);
    g
}

#[test]
fn group_handles() {
    let g = group("E(2,1)");
    let mut n = 0usize;
    let mut z = 0usize;
    unsafe {
        assert_eq!(naw_group_order(g, &mut n), NawStatus::Ok);
        assert_eq!(naw_group_center_order(g, &mut z), NawStatus::Ok);
    }
    assert_eq!((n, z), (8, 2));
    let mut prod = u32::MAX;
    assert_eq!(unsafe { naw_group_mul(g, 0, 5, &mut prod) }, NawStatus::Ok);
    assert_eq!(prod, 5);
    let mut ord = 0u64;
    assert_eq!(unsafe { naw_group_element_order(g, 1, &mut ord) }, NawStatus::Ok);
    assert!(ord == 2 || ord == 4);

    let q8 = group("E(2,1)");
    let d8 = group("E(2,0)");
    let mut iso = false;
    assert_eq!(unsafe { naw_group_isomorphic(g, q8, &mut iso) }, NawStatus::Ok);
    assert!(iso);
    assert_eq!(unsafe { naw_group_isomorphic(g, d8, &mut iso) }, NawStatus::Ok);
    assert!(!iso);
    unsafe {
        naw_group_free(g);
        naw_group_free(q8);
        naw_group_free(d8);
        naw_group_free(ptr::null_mut());
    }
}

#[test]
fn error_codes_and_messages() {
    let bad = CString::new("CP(E(2,0)").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { naw_group_new(bad.as_ptr(), &mut g) }, NawStatus::Parse);
    assert!(g.is_null());
    assert!(last_error().contains("parse error"));

    let bad_j = CString::new("E(3,5)").unwrap();
    assert_eq!(unsafe { naw_group_new(bad_j.as_ptr(), &mut g) }, NawStatus::InvalidInput);

    assert_eq!(unsafe { naw_group_new(ptr::null(), &mut g) }, NawStatus::NullPointer);
    assert_eq!(unsafe { naw_group_order(ptr::null(), &mut 0) }, NawStatus::NullPointer);

    let h = group("A(4)");
    assert_eq!(unsafe { naw_group_order(h, ptr::null_mut()) }, NawStatus::NullPointer);
    let mut out = 0u32;
    assert_eq!(unsafe { naw_group_mul(h, 0, 4, &mut out) }, NawStatus::OutOfRange);
    assert!(last_error().contains("out of range"));
    unsafe { naw_group_free(h) };

    let not_utf8 = [0xffu8 as c_char, 0];
    assert_eq!(unsafe { naw_group_new(not_utf8.as_ptr(), &mut g) }, NawStatus::InvalidUtf8);
}

fn run(args: &[&str]) -> (NawStatus, *mut NawCertificate) {
    let owned: Vec<CString> = args.iter().map(|a| CString::new(*a).unwrap()).collect();
    let ptrs: Vec<*const c_char> = owned.iter().map(|c| c.as_ptr()).collect();
    let mut cert = ptr::null_mut();
    let status = unsafe { naw_run(ptrs.as_ptr(), ptrs.len(), &mut cert) };
    (status, cert)
}

#[test]
fn certificates_match_the_binary_output() {
    let (status, cert) = run(&["waring", "--k", "2", "--modulus", "8"]);
    assert_eq!(status, NawStatus::Ok);
    let mut code = -1;
    let (mut p, mut f, mut i) = (0usize, 0usize, 0usize);
    let mut json = ptr::null_mut();
    unsafe {
        assert_eq!(naw_certificate_exit_code(cert, &mut code), NawStatus::Ok);
        assert_eq!(naw_certificate_counts(cert, &mut p, &mut f, &mut i), NawStatus::Ok);
        assert_eq!(naw_certificate_json(cert, &mut json), NawStatus::Ok);
    }
    assert_eq!((code, p, f, i), (0, 2, 0, 0));
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_string();
    let golden = include_str!("../../core/tests/golden/waring_2_8.json");
    assert_eq!(text, golden);
    unsafe {
        naw_string_free(json);
        naw_certificate_free(cert);
    }

    let (status, cert) = run(&["manifold", "--I", ""]);
    assert_eq!(status, NawStatus::Ok);
    unsafe {
        assert_eq!(naw_certificate_exit_code(cert, &mut code), NawStatus::Ok);
        naw_certificate_free(cert);
    }
    assert_eq!(code, 2);

    let (status, cert) = run(&["no-such-command"]);
    assert_eq!(status, NawStatus::InvalidInput);
    assert!(cert.is_null());
}

#[test]
fn waring_and_version() {
    let mut m = 0usize;
    assert_eq!(unsafe { naw_waring_min_powers(2, 8, &mut m) }, NawStatus::Ok);
    assert_eq!(m, 4);
    assert_eq!(unsafe { naw_waring_min_powers(2, 0, &mut m) }, NawStatus::InvalidInput);
    let v = unsafe { CStr::from_ptr(naw_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn errors_are_thread_local() {
    let bad = CString::new("?").unwrap();
    let mut g = ptr::null_mut();
    assert_ne!(unsafe { naw_group_new(bad.as_ptr(), &mut g) }, NawStatus::Ok);
    std::thread::spawn(|| assert!(naw_last_error_message().is_null())).join().unwrap();
    assert!(!naw_last_error_message().is_null());
}
