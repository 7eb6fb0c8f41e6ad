use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use ihall_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { ihall_string_free(s) };
    out
}

fn last_error() -> String {
    let p = ihall_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

#[test]
fn product_through_handle() {
    let spec = CString::new("cn:2").unwrap();
    let mut alg = ptr::null_mut();
    assert_eq!(unsafe { ihall_algebra_new(spec.as_ptr(), 2, &mut alg) }, IhallStatus::Ok);
    let (a, b) = (CString::new("0:1").unwrap(), CString::new("1:1").unwrap());
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { ihall_product(alg, a.as_ptr(), b.as_ptr(), &mut out) }, IhallStatus::Ok);
    let s = take(out);
    assert!(s.contains("[0:1+1:1] K[0,0]"), "{s}");
    assert!(ihall_last_error().is_null());

    let bad = CString::new("7:1").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { ihall_product(alg, bad.as_ptr(), b.as_ptr(), &mut out) }, IhallStatus::InvalidArgument);
    assert!(out.is_null());
    assert!(!last_error().is_empty());
    unsafe { ihall_algebra_free(alg) };
}

#[test]
fn bad_arguments() {
    let mut alg = ptr::null_mut();
    assert_eq!(unsafe { ihall_algebra_new(ptr::null(), 2, &mut alg) }, IhallStatus::NullPointer);
    let spec = CString::new("cn:2").unwrap();
    assert_eq!(unsafe { ihall_algebra_new(spec.as_ptr(), 6, &mut alg) }, IhallStatus::InvalidArgument);
    assert!(alg.is_null());
    assert!(last_error().contains('6'));
    let spec = CString::new("zz").unwrap();
    assert_eq!(unsafe { ihall_algebra_new(spec.as_ptr(), 2, &mut alg) }, IhallStatus::Parse);
    unsafe { ihall_algebra_free(ptr::null_mut()) };
    unsafe { ihall_string_free(ptr::null_mut()) };
}

#[test]
fn verify_reports_json() {
    let suite = CString::new("serre").unwrap();
    let quiver = CString::new("cn:3").unwrap();
    let mut report = ptr::null_mut();
    assert_eq!(unsafe { ihall_verify(suite.as_ptr(), quiver.as_ptr(), 2, 0, &mut report) }, IhallStatus::Ok);
    let json = take(report);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["suite"], "serre");
    assert_eq!(v["conventions"]["k-norm-winner"], "plain");

    let suite = CString::new("nope").unwrap();
    let mut report = ptr::null_mut();
    assert_eq!(unsafe { ihall_verify(suite.as_ptr(), ptr::null(), 0, 0, &mut report) }, IhallStatus::InvalidArgument);
    assert!(report.is_null());
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/ihall.h");
    let Ok(out) = Command::new("cc").args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", header]).output() else {
        eprintln!("no C compiler; skipping");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
