//! C interface to `robcert`.
//!
//! Matrices and certificates are opaque heap handles released with their
//! `*_free` function. Every fallible call returns a [`RobcertStatus`]; on
//! failure a description is kept per thread and can be read with
//! [`robcert_last_error_message`]. Strings returned through out-parameters
//! are released with [`robcert_string_free`]. Panics never cross the
//! boundary; they are reported as [`RobcertStatus::Internal`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use robcert::formats::{parse_certificate, parse_matrix, write_certificate, VerifiedCertificate};
use robcert::wat_enum::count_wats;
use robcert::{certify, Certificate, Error, SymMatrix};

/// Opaque symmetric matrix.
pub struct RobcertMatrix(SymMatrix);

/// Opaque certificate: a Robinson ordering or a weighted asteroidal triple.
pub struct RobcertCertificate(Certificate);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RobcertStatus {
    Ok = 0,
    NullPointer = 1,
    /// Unparsable text, bad shape or a value that cannot be represented.
    InvalidInput = 2,
    Asymmetric = 3,
    /// The certificate does not fit the request, e.g. asking a triple of an
    /// ordering.
    WrongKind = 4,
    BufferTooSmall = 5,
    Internal = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(RobcertStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Asymmetric { .. } => RobcertStatus::Asymmetric,
            Error::Invariant(_) => RobcertStatus::Internal,
            _ => RobcertStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn fail(status: RobcertStatus, msg: &str) -> Failure {
    Failure(status, msg.to_string())
}

fn set_error(msg: Option<String>) {
    let c = msg.map(|m| CString::new(m.replace('\0', " ")).expect("no interior nul"));
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> RobcertStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(None);
            RobcertStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(Some(msg));
            status
        }
        Err(_) => {
            set_error(Some("panic inside robcert".into()));
            RobcertStatus::Internal
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| fail(RobcertStatus::NullPointer, &format!("{what} is null")))
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| fail(RobcertStatus::NullPointer, &format!("{what} is null")))
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(fail(RobcertStatus::NullPointer, "text is null"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(RobcertStatus::InvalidInput, "text is not UTF-8"))
}

fn into_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| fail(RobcertStatus::Internal, "output contains a nul byte"))
}

/// Message of the last failed call on this thread, or null after a
/// successful one. Valid until the next call into this library on the same
/// thread; do not free it.
#[no_mangle]
pub extern "C" fn robcert_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a matrix labelled `0..n` from `n * n` row-major integers. The
/// diagonal is ignored; the rest must be symmetric.
///
/// # Safety
/// `entries` must point to `n * n` readable values and `out` must be a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn robcert_matrix_from_i64(
    n: usize,
    entries: *const i64,
    out: *mut *mut RobcertMatrix,
) -> RobcertStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        if n == 0 {
            return Err(fail(RobcertStatus::InvalidInput, "a matrix needs at least one element"));
        }
        if entries.is_null() {
            return Err(fail(RobcertStatus::NullPointer, "entries is null"));
        }
        let len = n.checked_mul(n).ok_or_else(|| fail(RobcertStatus::InvalidInput, "n is too large"))?;
        let flat = std::slice::from_raw_parts(entries, len);
        let rows: Vec<&[i64]> = flat.chunks(n).collect();
        let m = SymMatrix::from_integer_rows(&rows)?;
        *out = Box::into_raw(Box::new(RobcertMatrix(m)));
        Ok(())
    })
}

/// Parses the text matrix format (`n` or `lower n` header, then rows of
/// exact decimals or fractions).
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn robcert_matrix_from_text(text_in: *const c_char, out: *mut *mut RobcertMatrix) -> RobcertStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let m = parse_matrix(text(text_in)?)?;
        *out = Box::into_raw(Box::new(RobcertMatrix(m)));
        Ok(())
    })
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live matrix handle.
#[no_mangle]
pub unsafe extern "C" fn robcert_matrix_size(m: *const RobcertMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.n())
}

/// # Safety
/// `m` must be null or a matrix handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn robcert_matrix_free(m: *mut RobcertMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Decides whether `m` is Robinsonian and returns the certificate.
///
/// # Safety
/// `m` must be a live matrix handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn robcert_certify(m: *const RobcertMatrix, out: *mut *mut RobcertCertificate) -> RobcertStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let c = certify(&deref(m, "matrix")?.0)?;
        *out = Box::into_raw(Box::new(RobcertCertificate(c)));
        Ok(())
    })
}

/// Number of weighted asteroidal triples of `m`.
///
/// # Safety
/// `m` must be a live matrix handle and `count` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn robcert_count_wats(m: *const RobcertMatrix, count: *mut usize) -> RobcertStatus {
    guard(|| {
        let a = &deref(m, "matrix")?.0;
        *out_ptr(count, "count")? = count_wats(a);
        Ok(())
    })
}

/// # Safety
/// `c` must be null or a certificate handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn robcert_certificate_free(c: *mut RobcertCertificate) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Whether the certificate is a Robinson ordering. False for null.
///
/// # Safety
/// `c` must be null or a live certificate handle.
#[no_mangle]
pub unsafe extern "C" fn robcert_certificate_is_robinsonian(c: *const RobcertCertificate) -> bool {
    c.as_ref().is_some_and(|c| c.0.is_robinsonian())
}

/// Copies the ordering into `labels`. `len` always receives its length, so
/// a first call with `capacity = 0` sizes the buffer.
///
/// # Safety
/// `c` must be a live certificate handle, `len` a valid pointer and
/// `labels` valid for `capacity` writes (it may be null when `capacity` is 0).
#[no_mangle]
pub unsafe extern "C" fn robcert_certificate_ordering(
    c: *const RobcertCertificate,
    labels: *mut usize,
    capacity: usize,
    len: *mut usize,
) -> RobcertStatus {
    guard(|| {
        let order = deref(c, "certificate")?
            .0
            .ordering()
            .ok_or_else(|| fail(RobcertStatus::WrongKind, "certificate is not an ordering"))?;
        *out_ptr(len, "len")? = order.len();
        if capacity < order.len() {
            return Err(fail(RobcertStatus::BufferTooSmall, "buffer is shorter than the ordering"));
        }
        if labels.is_null() {
            return Err(fail(RobcertStatus::NullPointer, "labels is null"));
        }
        ptr::copy_nonoverlapping(order.as_slice().as_ptr(), labels, order.len());
        Ok(())
    })
}

/// Writes the three elements of a weighted asteroidal triple.
///
/// # Safety
/// `c` must be a live certificate handle and `triple` valid for 3 writes.
#[no_mangle]
pub unsafe extern "C" fn robcert_certificate_triple(c: *const RobcertCertificate, triple: *mut usize) -> RobcertStatus {
    guard(|| {
        let wat = deref(c, "certificate")?
            .0
            .wat()
            .ok_or_else(|| fail(RobcertStatus::WrongKind, "certificate is an ordering"))?;
        if triple.is_null() {
            return Err(fail(RobcertStatus::NullPointer, "triple is null"));
        }
        ptr::copy_nonoverlapping(wat.triple().as_ptr(), triple, 3);
        Ok(())
    })
}

/// Checks the certificate against `m` without trusting how it was made.
///
/// # Safety
/// `c` and `m` must be live handles and `valid` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn robcert_certificate_verify(
    c: *const RobcertCertificate,
    m: *const RobcertMatrix,
    valid: *mut bool,
) -> RobcertStatus {
    guard(|| {
        let ok = deref(c, "certificate")?.0.verify(&deref(m, "matrix")?.0)?;
        *out_ptr(valid, "valid")? = ok;
        Ok(())
    })
}

/// Parses a certificate in the text form or as JSON.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn robcert_certificate_from_text(
    text_in: *const c_char,
    out: *mut *mut RobcertCertificate,
) -> RobcertStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let c = parse_certificate(text(text_in)?)?;
        *out = Box::into_raw(Box::new(RobcertCertificate(c)));
        Ok(())
    })
}

/// Line-oriented text form, as printed by `robcert certify`.
///
/// # Safety
/// `c` must be a live certificate handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn robcert_certificate_to_text(c: *const RobcertCertificate, out: *mut *mut c_char) -> RobcertStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        *out = into_c_string(write_certificate(&deref(c, "certificate")?.0))?;
        Ok(())
    })
}

/// JSON document; `verified` is set only when `m` is given and the
/// certificate checks against it.
///
/// # Safety
/// `c` must be a live certificate handle, `m` null or a live matrix handle,
/// and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn robcert_certificate_to_json(
    c: *const RobcertCertificate,
    m: *const RobcertMatrix,
    out: *mut *mut c_char,
) -> RobcertStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let cert = &deref(c, "certificate")?.0;
        let verified = match m.as_ref() {
            Some(m) => cert.verify(&m.0)?,
            None => false,
        };
        let doc = VerifiedCertificate { verified, certificate: cert.clone() };
        let json = serde_json::to_string(&doc).map_err(|e| fail(RobcertStatus::Internal, &e.to_string()))?;
        *out = into_c_string(json)?;
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn robcert_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
