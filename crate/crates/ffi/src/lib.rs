//! C interface to `ep-dlog`.
//!
//! Elements and transcripts are opaque heap handles owned by the caller and
//! released with their `_free` function. Numbers cross the boundary as
//! NUL-terminated decimal strings; strings returned by the library are
//! released with [`ep_dlog_string_free`]. Every function returns an
//! [`EpDlogStatus`]; on failure [`ep_dlog_last_error`] describes the cause.
//! Output pointers are written only on success.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use ep_dlog::modmath::{factorize, seeded_rng};
use ep_dlog::{ep_log, sample_invertible, AttackTranscript, DlogOracle, EpElement, Error, Natural, OracleKind};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EpDlogStatus {
    Ok = 0,
    InvalidInput = 1,
    NotInvertible = 2,
    NoSolution = 3,
    NullPointer = 4,
    Internal = 5,
}

/// Z_p solver used by `ep_dlog_log`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EpDlogOracle {
    Bsgs = 0,
    PohligHellman = 1,
    Rho = 2,
}

/// An invertible or non-invertible element of E_p.
pub struct EpDlogElement(EpElement);

/// Result of one discrete-log computation.
pub struct EpDlogTranscript(AttackTranscript);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn status_of(error: &Error) -> EpDlogStatus {
    match error.exit_code() {
        1 => EpDlogStatus::InvalidInput,
        2 => EpDlogStatus::NotInvertible,
        3 => EpDlogStatus::NoSolution,
        _ => EpDlogStatus::Internal,
    }
}

struct Failure(EpDlogStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn null(what: &str) -> Failure {
    Failure(EpDlogStatus::NullPointer, format!("{what} is null"))
}

fn guard(body: impl FnOnce() -> Outcome) -> EpDlogStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error("");
            EpDlogStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(&message);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            EpDlogStatus::Internal
        }
    }
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(EpDlogStatus::InvalidInput, format!("{what} is not UTF-8")))
}

unsafe fn natural(s: *const c_char, what: &str) -> Result<Natural, Failure> {
    let t = text(s, what)?;
    t.parse()
        .map_err(|_| Failure(EpDlogStatus::InvalidInput, format!("{what} is not a decimal natural: {t:?}")))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Outcome {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn store_string(out: *mut *mut c_char, value: String) -> Outcome {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(value).map_err(|_| Failure(EpDlogStatus::Internal, "interior NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn ep_dlog_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses `"a,b,c,u,v"` for the prime `p`.
///
/// # Safety
/// `p` and `element_text` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ep_dlog_element_parse(
    p: *const c_char,
    element_text: *const c_char,
    out: *mut *mut EpDlogElement,
) -> EpDlogStatus {
    guard(|| {
        let p = natural(p, "p")?;
        let g = EpElement::parse(&p, text(element_text, "element text")?)?;
        store(out, EpDlogElement(g))
    })
}

/// Parses the JSON record `{"p","a","b","c","u","v"}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ep_dlog_element_from_json(json: *const c_char, out: *mut *mut EpDlogElement) -> EpDlogStatus {
    guard(|| {
        let g = EpElement::from_json(text(json, "json")?)?;
        store(out, EpDlogElement(g))
    })
}

/// # Safety
/// `element` must come from this library and not be used afterwards. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn ep_dlog_element_free(element: *mut EpDlogElement) {
    if !element.is_null() {
        drop(Box::from_raw(element));
    }
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn ep_dlog_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Writes `"a,b,c,u,v"`.
///
/// # Safety
/// `element` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ep_dlog_element_to_string(element: *const EpDlogElement, out: *mut *mut c_char) -> EpDlogStatus {
    guard(|| store_string(out, borrow(element, "element")?.0.to_string()))
}

/// Writes the JSON record with decimal-string fields.
///
/// # Safety
/// `element` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ep_dlog_element_to_json(element: *const EpDlogElement, out: *mut *mut c_char) -> EpDlogStatus {
    guard(|| store_string(out, borrow(element, "element")?.0.to_json()))
}

/// # Safety
/// `lhs` and `rhs` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ep_dlog_element_mul(
    lhs: *const EpDlogElement,
    rhs: *const EpDlogElement,
    out: *mut *mut EpDlogElement,
) -> EpDlogStatus {
    guard(|| {
        let product = borrow(lhs, "lhs")?.0.mul(&borrow(rhs, "rhs")?.0)?;
        store(out, EpDlogElement(product))
    })
}

/// `element^n` for a decimal exponent `n`.
///
/// # Safety
/// `element` must be a live handle, `n` a NUL-terminated string, `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn ep_dlog_element_pow(
    element: *const EpDlogElement,
    n: *const c_char,
    out: *mut *mut EpDlogElement,
) -> EpDlogStatus {
    guard(|| {
        let g = &borrow(element, "element")?.0;
        let n = natural(n, "exponent")?;
        store(out, EpDlogElement(g.pow(&n)))
    })
}

/// # Safety
/// `element` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ep_dlog_element_inverse(element: *const EpDlogElement, out: *mut *mut EpDlogElement) -> EpDlogStatus {
    guard(|| {
        let inverse = borrow(element, "element")?.0.inverse()?;
        store(out, EpDlogElement(inverse))
    })
}

/// # Safety
/// `element` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ep_dlog_element_is_invertible(element: *const EpDlogElement, out: *mut bool) -> EpDlogStatus {
    guard(|| {
        let invertible = borrow(element, "element")?.0.is_invertible();
        if out.is_null() {
            return Err(null("output pointer"));
        }
        *out = invertible;
        Ok(())
    })
}

/// Multiplicative order as a decimal string. Factors `p - 1` internally.
///
/// # Safety
/// `element` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ep_dlog_element_order(element: *const EpDlogElement, out: *mut *mut c_char) -> EpDlogStatus {
    guard(|| {
        let g = &borrow(element, "element")?.0;
        let fact = factorize(&(g.p() - 1u8))?;
        store_string(out, g.order(&fact)?.to_string())
    })
}

/// Uniform invertible element, reproducible from `seed`.
///
/// # Safety
/// `p` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ep_dlog_sample_invertible(p: *const c_char, seed: u64, out: *mut *mut EpDlogElement) -> EpDlogStatus {
    guard(|| {
        let p = natural(p, "p")?;
        let g = sample_invertible(&p, &mut seeded_rng(seed, &[]))?;
        store(out, EpDlogElement(g))
    })
}

/// Least `x` with `g^x = h`, using at most two Z_p logs.
///
/// # Safety
/// `g` and `h` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ep_dlog_log(
    g: *const EpDlogElement,
    h: *const EpDlogElement,
    oracle: EpDlogOracle,
    seed: u64,
    out: *mut *mut EpDlogTranscript,
) -> EpDlogStatus {
    guard(|| {
        let g = &borrow(g, "g")?.0;
        let h = &borrow(h, "h")?.0;
        let kind = match oracle {
            EpDlogOracle::Bsgs => OracleKind::Bsgs,
            EpDlogOracle::PohligHellman => OracleKind::PohligHellman,
            EpDlogOracle::Rho => OracleKind::Rho,
        };
        let fact = factorize(&(g.p() - 1u8))?;
        let transcript = ep_log(g, h, &DlogOracle::with_seed(kind, seed), &fact)?;
        store(out, EpDlogTranscript(transcript))
    })
}

/// # Safety
/// `transcript` must come from this library and not be used afterwards.
/// Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ep_dlog_transcript_free(transcript: *mut EpDlogTranscript) {
    if !transcript.is_null() {
        drop(Box::from_raw(transcript));
    }
}

/// The recovered exponent as a decimal string.
///
/// # Safety
/// `transcript` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ep_dlog_transcript_x(transcript: *const EpDlogTranscript, out: *mut *mut c_char) -> EpDlogStatus {
    guard(|| store_string(out, borrow(transcript, "transcript")?.0.x.to_string()))
}

/// Number of Z_p discrete logs issued; 0 on a null handle.
///
/// # Safety
/// `transcript` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ep_dlog_transcript_zp_dlog_calls(transcript: *const EpDlogTranscript) -> u32 {
    transcript.as_ref().map_or(0, |t| t.0.zp_dlog_calls)
}

/// All transcript fields as one JSON object.
///
/// # Safety
/// `transcript` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ep_dlog_transcript_to_json(transcript: *const EpDlogTranscript, out: *mut *mut c_char) -> EpDlogStatus {
    guard(|| {
        store_string(out, borrow(transcript, "transcript")?.0.to_json())
    })
}
