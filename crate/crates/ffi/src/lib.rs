//! C ABI over the ellipta engine.
//!
//! Every function returns an `EllipStatus`; results come back through out
//! pointers. Polynomials are opaque `EllipPoly` handles freed with
//! `ellipta_poly_free`; strings handed out are freed with
//! `ellipta_string_free`. After a nonzero status, `ellipta_last_error`
//! describes the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ellipta::elliptic::{gamma_triangle_recurrence, j_even_decomposition, j_sequence, Route};
use ellipta::exactpoly::{MultiPoly, UniPoly};
use ellipta::gammakit::analyze;
use ellipta::grammar::parse_polynomial;
use ellipta::verify::{run_suite, Suite, VerifyOptions};
use ellipta::Error;

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EllipStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    CapExceeded = 4,
    VerificationFailed = 5,
    Internal = 6,
    Panic = 7,
}

/// J routes selectable from C.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EllipRoute {
    Operator = 0,
    Recurrence = 1,
    Viennot = 2,
    Series = 3,
}

/// Opaque univariate polynomial with big-integer coefficients.
pub struct EllipPoly {
    inner: UniPoly,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> EllipStatus {
    match e {
        Error::Parse { .. } | Error::UnknownVariable(_) => EllipStatus::Parse,
        Error::CapExceeded { .. } => EllipStatus::CapExceeded,
        Error::InvalidArgument(_)
        | Error::DegreeExceedsCenter { .. }
        | Error::NotSymmetric { .. }
        | Error::Precondition(_)
        | Error::ExponentOverflow => EllipStatus::InvalidArgument,
        Error::RouteMismatch { .. } | Error::PatternViolation { .. } => {
            EllipStatus::VerificationFailed
        }
        _ => EllipStatus::Internal,
    }
}

/// Runs `f`, recording any error or panic for `ellipta_last_error`.
fn guard(f: impl FnOnce() -> Result<(), EllipStatus>) -> EllipStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EllipStatus::Ok,
        Ok(Err(s)) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            EllipStatus::Panic
        }
    }
}

fn fail<T>(r: ellipta::Result<T>) -> Result<T, EllipStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

fn null_check<T>(p: *const T, what: &str) -> Result<(), EllipStatus> {
    if p.is_null() {
        set_error(format!("{what} is null"));
        return Err(EllipStatus::NullPointer);
    }
    Ok(())
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, EllipStatus> {
    null_check(s, what)?;
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error(format!("{what} is not UTF-8"));
        EllipStatus::InvalidArgument
    })
}

fn to_c_string(s: String) -> Result<*mut c_char, EllipStatus> {
    CString::new(s).map(CString::into_raw).map_err(|_| {
        set_error("output contains a NUL byte");
        EllipStatus::Internal
    })
}

fn usize_arg(v: c_int, what: &str) -> Result<usize, EllipStatus> {
    usize::try_from(v).map_err(|_| {
        set_error(format!("{what} must be nonnegative, got {v}"));
        EllipStatus::InvalidArgument
    })
}

fn new_poly(p: UniPoly) -> *mut EllipPoly {
    Box::into_raw(Box::new(EllipPoly { inner: p }))
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ellipta_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ellipta_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Frees a polynomial handle. Null is ignored.
///
/// # Safety
/// `p` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ellipta_poly_free(p: *mut EllipPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Parses a polynomial in `x` such as `"1 + 14x + x^2"`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ellipta_poly_parse(text: *const c_char, out: *mut *mut EllipPoly) -> EllipStatus {
    guard(|| {
        null_check(out, "out")?;
        let text = read_str(text, "text")?;
        let alphabet = MultiPoly::zero(&["x"]).alphabet_arc();
        let m = fail(parse_polynomial(text, alphabet))?;
        let x = [("x".to_string(), UniPoly::monomial(1, 1))].into_iter().collect();
        *out = new_poly(fail(m.substitute(&x))?);
        Ok(())
    })
}

/// Degree of `p`, or -1 for the zero polynomial.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ellipta_poly_degree(p: *const EllipPoly, out: *mut i64) -> EllipStatus {
    guard(|| {
        null_check(p, "poly")?;
        null_check(out, "out")?;
        *out = (*p).inner.degree().map_or(-1, |d| d as i64);
        Ok(())
    })
}

/// Coefficient of `x^k` as a decimal string.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ellipta_poly_coeff(p: *const EllipPoly, k: c_int, out: *mut *mut c_char) -> EllipStatus {
    guard(|| {
        null_check(p, "poly")?;
        null_check(out, "out")?;
        let k = usize_arg(k, "k")?;
        *out = to_c_string((*p).inner.coeff(k).to_string())?;
        Ok(())
    })
}

/// Text form, e.g. `1 + 408x + 912x^2 + 64x^3`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ellipta_poly_to_string(p: *const EllipPoly, out: *mut *mut c_char) -> EllipStatus {
    guard(|| {
        null_check(p, "poly")?;
        null_check(out, "out")?;
        *out = to_c_string((*p).inner.to_text("x"))?;
        Ok(())
    })
}

/// JSON form `{"var":"x","coeffs":[...]}` with decimal-string coefficients.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ellipta_poly_to_json(p: *const EllipPoly, out: *mut *mut c_char) -> EllipStatus {
    guard(|| {
        null_check(p, "poly")?;
        null_check(out, "out")?;
        *out = to_c_string((*p).inner.to_json("x"))?;
        Ok(())
    })
}

/// `J_n` by the chosen route.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ellipta_j(n: c_int, route: EllipRoute, out: *mut *mut EllipPoly) -> EllipStatus {
    guard(|| {
        null_check(out, "out")?;
        let n = usize_arg(n, "n")?;
        let route = match route {
            EllipRoute::Operator => Route::Operator,
            EllipRoute::Recurrence => Route::Recurrence,
            EllipRoute::Viennot => Route::Viennot,
            EllipRoute::Series => Route::Series,
        };
        let seq = fail(j_sequence(route, n))?;
        *out = new_poly(seq.get(n).cloned().unwrap_or_else(UniPoly::one));
        Ok(())
    })
}

/// `J_(2m+2) = A + x B` from the gamma-vector construction.
///
/// # Safety
/// `out_a` and `out_b` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ellipta_j_even_decomposition(
    m: c_int,
    out_a: *mut *mut EllipPoly,
    out_b: *mut *mut EllipPoly,
) -> EllipStatus {
    guard(|| {
        null_check(out_a, "out_a")?;
        null_check(out_b, "out_b")?;
        let m = usize_arg(m, "m")?;
        let gamma = fail(gamma_triangle_recurrence(2 * m + 1))?;
        let d = fail(j_even_decomposition(&gamma, m))?;
        *out_a = new_poly(d.a.reconstruct());
        *out_b = new_poly(d.b.reconstruct());
        Ok(())
    })
}

/// Symmetry, unimodality, gamma and bi-gamma verdicts with certificates,
/// as JSON. A negative `center` means the degree of `p`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ellipta_analyze(p: *const EllipPoly, center: c_int, out: *mut *mut c_char) -> EllipStatus {
    guard(|| {
        null_check(p, "poly")?;
        null_check(out, "out")?;
        let f = &(*p).inner;
        let center = if center < 0 { f.degree().unwrap_or(0) } else { center as usize };
        *out = to_c_string(analyze(f, center).to_json())?;
        Ok(())
    })
}

/// Runs a verification suite by name. A negative `max_n` selects the
/// suite default. `passed` receives 1 or 0; `report` (optional) receives the
/// text report. A failing suite is not an error status.
///
/// # Safety
/// `name` must be a NUL-terminated string; `passed` must be writable;
/// `report` may be null.
#[no_mangle]
pub unsafe extern "C" fn ellipta_verify(
    name: *const c_char,
    max_n: c_int,
    passed: *mut c_int,
    report: *mut *mut c_char,
) -> EllipStatus {
    guard(|| {
        null_check(passed, "passed")?;
        let suite: Suite = fail(read_str(name, "name")?.parse())?;
        let opts = VerifyOptions {
            max_n: usize::try_from(max_n).ok(),
            ..VerifyOptions::default()
        };
        let rep = fail(run_suite(suite, &opts))?;
        *passed = c_int::from(rep.passed());
        if !report.is_null() {
            *report = to_c_string(rep.to_text())?;
        }
        Ok(())
    })
}
