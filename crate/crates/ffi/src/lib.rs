//! C interface to `arclimit`.
//!
//! Every handle is opaque and owned by the caller once returned; release it
//! with the matching `_free`. Strings returned through `char **` are
//! allocated here and must go back through [`arclimit_string_free`].
//! Fallible calls return an [`ArclimitStatus`]; the message for the most
//! recent failure on the calling thread is available from
//! [`arclimit_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use arclimit::format::{read_certificate, read_plmap, write_certificate, write_plmap};
use arclimit::rational::{fmt_frac, parse};
use arclimit::report::write_report;
use arclimit::splitting::verify_certificate;
use arclimit::{corpus, decide, ArcVerdict, Error, Outcome, PLMap, SplitCertificate};

/// A piecewise-linear map of `[0, 1]` with rational breakpoints.
pub struct ArclimitMap(PLMap);

/// A splitting certificate `(A, B, D, k)`.
pub struct ArclimitCert(SplitCertificate);

/// The result of `arclimit_decide`.
pub struct ArclimitVerdict(ArcVerdict);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArclimitStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidMap = 4,
    DomainError = 5,
    NotSurjective = 6,
    BudgetExceeded = 7,
    ReplayFailure = 8,
    PreconditionViolated = 9,
    Panic = 10,
    OtherError = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArclimitOutcome {
    Arc = 0,
    NotArc = 1,
    Undecided = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(ArclimitStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse { .. } => ArclimitStatus::ParseError,
            Error::EmptyMap | Error::NotAnchored | Error::NotSorted | Error::OutOfRange(_) => ArclimitStatus::InvalidMap,
            Error::DomainError(_) => ArclimitStatus::DomainError,
            Error::NotSurjective => ArclimitStatus::NotSurjective,
            Error::BudgetExceeded { .. } => ArclimitStatus::BudgetExceeded,
            Error::ReplayFailure { .. } => ArclimitStatus::ReplayFailure,
            Error::PreconditionViolated(_) => ArclimitStatus::PreconditionViolated,
            _ => ArclimitStatus::OtherError,
        };
        Failure(status, e.to_string())
    }
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

/// Runs `body`, converting errors and panics to a status.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> ArclimitStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            ArclimitStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(&message);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            ArclimitStatus::Panic
        }
    }
}

unsafe fn utf8<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure(ArclimitStatus::NullArgument, "null string argument".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Failure(ArclimitStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn borrow<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(ArclimitStatus::NullArgument, "null handle".into()))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(ArclimitStatus::NullArgument, "null output pointer".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(ArclimitStatus::NullArgument, "null output pointer".into()));
    }
    *out = CString::new(s).map_err(|_| Failure(ArclimitStatus::OtherError, "string contains NUL".into()))?.into_raw();
    Ok(())
}

/// Message for the last failed call on this thread, or NULL after a
/// success. Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn arclimit_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn arclimit_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn arclimit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a `plmap v1` document.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arclimit_map_parse(text: *const c_char, out: *mut *mut ArclimitMap) -> ArclimitStatus {
    guard(|| {
        let f = read_plmap(utf8(text)?)?;
        put(out, ArclimitMap(f))
    })
}

/// A built-in map such as `tent`, `bs_f` or `henderson:3`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arclimit_map_from_corpus(name: *const c_char, out: *mut *mut ArclimitMap) -> ArclimitStatus {
    guard(|| {
        let f = corpus::lookup(utf8(name)?)?;
        put(out, ArclimitMap(f))
    })
}

/// # Safety
/// `map` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn arclimit_map_free(map: *mut ArclimitMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// Serialises a map as `plmap v1`.
///
/// # Safety
/// `map` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arclimit_map_to_string(map: *const ArclimitMap, out: *mut *mut c_char) -> ArclimitStatus {
    guard(|| put_string(out, write_plmap(&borrow(map)?.0)))
}

/// Number of breakpoints in canonical form.
///
/// # Safety
/// `map` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn arclimit_map_breakpoint_count(map: *const ArclimitMap) -> usize {
    map.as_ref().map_or(0, |m| m.0.breakpoints().len())
}

/// Evaluates the map exactly at a rational such as `"2/7"`; the result is
/// written as `p/q`.
///
/// # Safety
/// `map` must be a live handle, `x` a NUL-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn arclimit_map_eval(
    map: *const ArclimitMap,
    x: *const c_char,
    out: *mut *mut c_char,
) -> ArclimitStatus {
    guard(|| {
        let f = &borrow(map)?.0;
        let s = utf8(x)?;
        let x = parse(s).ok_or_else(|| Failure(ArclimitStatus::ParseError, format!("bad rational `{s}`")))?;
        put_string(out, fmt_frac(&f.eval(&x)?))
    })
}

/// The `k`-fold composition.
///
/// # Safety
/// `map` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arclimit_map_iterate(map: *const ArclimitMap, k: usize, out: *mut *mut ArclimitMap) -> ArclimitStatus {
    guard(|| {
        let g = borrow(map)?.0.iterate(k)?;
        put(out, ArclimitMap(g))
    })
}

/// Runs the verdict pipeline with certificate orders up to `k_max` and
/// replay length `depth`.
///
/// # Safety
/// `map` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arclimit_decide(
    map: *const ArclimitMap,
    k_max: usize,
    depth: usize,
    out: *mut *mut ArclimitVerdict,
) -> ArclimitStatus {
    guard(|| {
        let v = decide(&borrow(map)?.0, k_max, depth)?;
        put(out, ArclimitVerdict(v))
    })
}

/// # Safety
/// `verdict` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn arclimit_verdict_outcome(verdict: *const ArclimitVerdict) -> ArclimitOutcome {
    match verdict.as_ref().map(|v| v.0.outcome) {
        Some(Outcome::Arc) => ArclimitOutcome::Arc,
        Some(Outcome::NotArc) => ArclimitOutcome::NotArc,
        _ => ArclimitOutcome::Undecided,
    }
}

/// Pipeline stage that produced the verdict; 0 for a NULL handle.
///
/// # Safety
/// `verdict` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn arclimit_verdict_stage(verdict: *const ArclimitVerdict) -> u8 {
    verdict.as_ref().map_or(0, |v| v.0.stage)
}

/// Copies the verdict's certificate into a new handle, or writes NULL when
/// there is none.
///
/// # Safety
/// `verdict` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arclimit_verdict_certificate(
    verdict: *const ArclimitVerdict,
    out: *mut *mut ArclimitCert,
) -> ArclimitStatus {
    guard(|| {
        let v = borrow(verdict)?;
        match &v.0.certificate {
            Some(c) => put(out, ArclimitCert(c.clone())),
            None if out.is_null() => Err(Failure(ArclimitStatus::NullArgument, "null output pointer".into())),
            None => {
                *out = ptr::null_mut();
                Ok(())
            }
        }
    })
}

/// The `arcreport v1` text for a verdict on `map`.
///
/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arclimit_verdict_report(
    map: *const ArclimitMap,
    verdict: *const ArclimitVerdict,
    out: *mut *mut c_char,
) -> ArclimitStatus {
    guard(|| {
        let report = write_report(&borrow(map)?.0, &borrow(verdict)?.0, None)?;
        put_string(out, report)
    })
}

/// # Safety
/// `verdict` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn arclimit_verdict_free(verdict: *mut ArclimitVerdict) {
    if !verdict.is_null() {
        drop(Box::from_raw(verdict));
    }
}

/// Parses a `splitcert v1` document.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arclimit_cert_parse(text: *const c_char, out: *mut *mut ArclimitCert) -> ArclimitStatus {
    guard(|| {
        let c = read_certificate(utf8(text)?)?;
        put(out, ArclimitCert(c))
    })
}

/// # Safety
/// `cert` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arclimit_cert_to_string(cert: *const ArclimitCert, out: *mut *mut c_char) -> ArclimitStatus {
    guard(|| put_string(out, write_certificate(&borrow(cert)?.0)))
}

/// The order `k`; 0 for a NULL handle.
///
/// # Safety
/// `cert` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn arclimit_cert_order(cert: *const ArclimitCert) -> usize {
    cert.as_ref().map_or(0, |c| c.0.k)
}

/// Replays `n_terms` terms of the sequence the certificate generates for
/// `map`. Returns `ARCLIMIT_STATUS_REPLAY_FAILURE` when a condition fails.
///
/// # Safety
/// Both handles must be live.
#[no_mangle]
pub unsafe extern "C" fn arclimit_cert_verify(
    map: *const ArclimitMap,
    cert: *const ArclimitCert,
    n_terms: usize,
) -> ArclimitStatus {
    guard(|| {
        verify_certificate(&borrow(map)?.0, &borrow(cert)?.0, n_terms)?;
        Ok(())
    })
}

/// # Safety
/// `cert` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn arclimit_cert_free(cert: *mut ArclimitCert) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}
