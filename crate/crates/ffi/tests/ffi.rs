use std::ffi::{CStr, CString};
use std::ptr;

use wpl_ffi::*;

fn handle(p: &[i64], lambda: &[(i64, i64)]) -> *mut WplHandle {
    let num: Vec<i64> = lambda.iter().map(|l| l.0).collect();
    let den: Vec<i64> = lambda.iter().map(|l| l.1).collect();
    let mut h = ptr::null_mut();
    let s = unsafe {
        wpl_new(
            p.as_ptr(),
            p.len(),
            num.as_ptr(),
            den.as_ptr(),
            lambda.len(),
            &mut h,
        )
    };
    assert_eq!(s, WplStatus::Ok);
    h
}

fn take(s: *mut std::ffi::c_char) -> serde_json::Value {
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { wpl_string_free(s) };
    serde_json::from_str(&text).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(wpl_last_error()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn lifecycle_and_queries() {
    let h = handle(&[2, 3, 4], &[]);
    let mut n = 0usize;
    assert_eq!(unsafe { wpl_vertex_count(h, &mut n) }, WplStatus::Ok);
    assert_eq!(n, 8);

    let deg = CString::new("2c").unwrap();
    let mut dim = 0u64;
    assert_eq!(
        unsafe { wpl_h0_dim(h, deg.as_ptr(), &mut dim) },
        WplStatus::Ok
    );
    assert_eq!(dim, 3);
    let bad = CString::new("x9").unwrap();
    assert_eq!(
        unsafe { wpl_h0_dim(h, bad.as_ptr(), &mut dim) },
        WplStatus::InvalidArgument
    );
    assert!(last_error().contains("x9"));

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { wpl_classify_json(h, &mut s) }, WplStatus::Ok);
    let v = take(s);
    assert_eq!(v["class"]["Spherical"]["E"], 7);
    assert_eq!(v["euler_char"], "1/12");

    assert_eq!(unsafe { wpl_kquiver_json(h, 24, &mut s) }, WplStatus::Ok);
    let v = take(s);
    assert_eq!(v["arrows"].as_array().unwrap().len(), 21);
    assert_eq!(v["closure_verified"], true);

    assert_eq!(
        unsafe { wpl_kquiver_json(h, 1, &mut s) },
        WplStatus::CertificateFailure
    );
    assert_eq!(take(s)["closure_verified"], false);

    assert_eq!(unsafe { wpl_tilting_json(h, &mut s) }, WplStatus::Ok);
    assert_eq!(take(s)["acyclic"], false);

    unsafe { wpl_free(h) };
}

#[test]
fn lambda_and_errors() {
    let h = handle(&[2, 2, 2, 3], &[(1, 2)]);
    unsafe { wpl_free(h) };

    let p = [2i64, 2, 2, 3];
    let mut h = ptr::null_mut();
    let s = unsafe { wpl_new(p.as_ptr(), 4, ptr::null(), ptr::null(), 0, &mut h) };
    assert_eq!(s, WplStatus::SemanticError);
    assert!(h.is_null());
    let num = [1i64];
    let den = [0i64];
    let s = unsafe { wpl_new(p.as_ptr(), 4, num.as_ptr(), den.as_ptr(), 1, &mut h) };
    assert_eq!(s, WplStatus::InvalidArgument);
    let s = unsafe {
        wpl_new(
            p.as_ptr(),
            4,
            num.as_ptr(),
            den.as_ptr(),
            1,
            ptr::null_mut(),
        )
    };
    assert_eq!(s, WplStatus::NullPointer);
    let mut n = 0usize;
    assert_eq!(
        unsafe { wpl_vertex_count(ptr::null(), &mut n) },
        WplStatus::NullPointer
    );
    let zero = [0i64];
    let s = unsafe { wpl_new(zero.as_ptr(), 1, ptr::null(), ptr::null(), 0, &mut h) };
    assert_eq!(s, WplStatus::SemanticError);
    unsafe {
        wpl_free(ptr::null_mut());
        wpl_string_free(ptr::null_mut());
    }
}

#[test]
fn header_is_valid_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/wpl.h");
    let src = std::env::temp_dir().join(format!("wpl_header_{}.c", std::process::id()));
    std::fs::write(
        &src,
        format!("#include \"{header}\"\nint main(void) {{ return WPL_STATUS_OK; }}\n"),
    )
    .unwrap();
    let status = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only"])
        .arg(&src)
        .status();
    let _ = std::fs::remove_file(&src);
    match status {
        Ok(s) => assert!(s.success(), "header does not compile"),
        Err(_) => eprintln!("no C compiler available; header not compiled"),
    }
}
