//! C interface to `wpl-core`.
//!
//! A weighted projective line is held behind an opaque `WplHandle`. Every
//! function returns a `WplStatus`; results are written through out-pointers.
//! Strings returned by the library are NUL-terminated JSON and must be
//! released with `wpl_string_free`. The message of the most recent failure on
//! the calling thread is available from `wpl_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use serde_json::json;
use wpl_core::bundle_quiver::extract_arrows;
use wpl_core::coxring::h0_dim;
use wpl_core::degree_expr::parse_degree;
use wpl_core::export::{format_rational, QuiverDoc};
use wpl_core::tilting::{classify, is_pullback_acyclic};
use wpl_core::{Error, Rational, WplData};

/// Status codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WplStatus {
    Ok = 0,
    NullPointer = 1,
    /// Malformed input: parse errors, bad indices, bad UTF-8.
    InvalidArgument = 2,
    /// Well-formed but mathematically invalid input.
    SemanticError = 3,
    /// A computation could not certify its result.
    CertificateFailure = 4,
    /// An internal panic was caught.
    Panic = 5,
}

/// Opaque handle to a weighted projective line.
pub struct WplHandle {
    wpl: WplData,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = CString::new(message.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn status_of(e: &Error) -> WplStatus {
    match e {
        Error::Parse { .. } | Error::Index { .. } | Error::Vertex(_) => WplStatus::InvalidArgument,
        Error::CapExceeded(_) | Error::ZeroDegreeCycle => WplStatus::CertificateFailure,
        _ => WplStatus::SemanticError,
    }
}

fn fail(e: Error) -> WplStatus {
    let status = status_of(&e);
    set_error(e.to_string());
    status
}

fn guard(f: impl FnOnce() -> WplStatus) -> WplStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            WplStatus::Panic
        }
    }
}

fn null(what: &str) -> WplStatus {
    set_error(format!("{what} is null"));
    WplStatus::NullPointer
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> WplStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            WplStatus::Ok
        }
        Err(_) => {
            set_error("output contains a NUL byte");
            WplStatus::Panic
        }
    }
}

/// Creates a handle for `weights[0..n_weights]` with point parameters
/// `lambda_num[k] / lambda_den[k]` for `k < n_lambda` (the lambda arrays may be
/// null when `n_lambda` is 0).
///
/// # Safety
/// The arrays must be valid for the given lengths and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wpl_new(
    weights: *const i64,
    n_weights: usize,
    lambda_num: *const i64,
    lambda_den: *const i64,
    n_lambda: usize,
    out: *mut *mut WplHandle,
) -> WplStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        if weights.is_null() && n_weights > 0 {
            return null("weights");
        }
        if n_lambda > 0 && (lambda_num.is_null() || lambda_den.is_null()) {
            return null("lambda");
        }
        let p = if n_weights == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(weights, n_weights)
        };
        let mut lambda = Vec::with_capacity(n_lambda);
        for k in 0..n_lambda {
            let den = *lambda_den.add(k);
            if den == 0 {
                set_error("lambda denominator is zero");
                return WplStatus::InvalidArgument;
            }
            lambda.push(Rational::new((*lambda_num.add(k)).into(), den.into()));
        }
        match WplData::new(p, lambda) {
            Ok(wpl) => {
                *out = Box::into_raw(Box::new(WplHandle { wpl }));
                WplStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `handle` must come from `wpl_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wpl_free(handle: *mut WplHandle) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Number of vertices `N` of the canonical algebra's quiver.
///
/// # Safety
/// `handle` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wpl_vertex_count(handle: *const WplHandle, out: *mut usize) -> WplStatus {
    guard(|| {
        let (Some(h), false) = (handle.as_ref(), out.is_null()) else {
            return null("handle or out");
        };
        *out = h.wpl.vertex_count();
        WplStatus::Ok
    })
}

/// `dim H^0` of the degree given by the expression `degree`, e.g. `"3c-2x1"`.
///
/// # Safety
/// `handle` must be live, `degree` a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wpl_h0_dim(
    handle: *const WplHandle,
    degree: *const c_char,
    out: *mut u64,
) -> WplStatus {
    guard(|| {
        let (Some(h), false, false) = (handle.as_ref(), degree.is_null(), out.is_null()) else {
            return null("handle, degree or out");
        };
        let Ok(src) = CStr::from_ptr(degree).to_str() else {
            set_error("degree is not valid UTF-8");
            return WplStatus::InvalidArgument;
        };
        match parse_degree(src, h.wpl.n()) {
            Ok(expr) => {
                *out = h0_dim(&h.wpl, &expr.eval(&h.wpl));
                WplStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Classification as JSON: `{"class", "euler_char", "delta_omega", "pbar", "vertices"}`.
///
/// # Safety
/// `handle` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wpl_classify_json(
    handle: *const WplHandle,
    out: *mut *mut c_char,
) -> WplStatus {
    guard(|| {
        let (Some(h), false) = (handle.as_ref(), out.is_null()) else {
            return null("handle or out");
        };
        let w = &h.wpl;
        let doc = json!({
            "class": classify(w),
            "euler_char": format_rational(&w.euler_char()),
            "delta_omega": w.delta(&w.omega()),
            "pbar": w.pbar(),
            "vertices": w.vertex_count(),
        });
        write_string(out, doc.to_string())
    })
}

/// The quiver of the canonical bundle up to `t`-degree `k_max`, in the JSON
/// schema of the command line. Returns `CertificateFailure` (with the JSON
/// still written) when the arrows do not generate the algebra.
///
/// # Safety
/// `handle` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wpl_kquiver_json(
    handle: *const WplHandle,
    k_max: u32,
    out: *mut *mut c_char,
) -> WplStatus {
    guard(|| {
        let (Some(h), false) = (handle.as_ref(), out.is_null()) else {
            return null("handle or out");
        };
        let ext = extract_arrows(&h.wpl, k_max);
        let mut doc = QuiverDoc::new(&h.wpl, &ext.quiver);
        doc.k_max = Some(k_max);
        doc.closure_verified = Some(ext.closure_verified);
        let status = write_string(out, doc.to_json());
        if status == WplStatus::Ok && !ext.closure_verified {
            set_error("arrows do not generate the algebra; raise k_max");
            return WplStatus::CertificateFailure;
        }
        status
    })
}

/// Acyclicity verdict of the pulled-back bundle as JSON.
///
/// # Safety
/// `handle` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wpl_tilting_json(
    handle: *const WplHandle,
    out: *mut *mut c_char,
) -> WplStatus {
    guard(|| {
        let (Some(h), false) = (handle.as_ref(), out.is_null()) else {
            return null("handle or out");
        };
        let verdict = is_pullback_acyclic(&h.wpl);
        write_string(
            out,
            serde_json::to_string(&verdict).expect("verdicts serialize"),
        )
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wpl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn wpl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
