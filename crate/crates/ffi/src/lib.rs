//! C ABI over the `superleib` kernel.
//!
//! Algebras are opaque `SlAlgebra` handles owned by the caller and released
//! with `sl_algebra_free`. Every fallible call returns an `SlStatus`; on
//! failure `sl_last_error` describes the error for the calling thread.
//! Strings returned through `char **` out-parameters are released with
//! `sl_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use superleib::format::{parse_lsa, serialize_lsa};
use superleib::invariants::{central_series, characteristic_sequence, CharSeqPolicy, Fingerprint};
use superleib::search::{census, SearchSpec};
use superleib::{Error, FamilyId, FamilyTag, Scalar, SuperAlgebra};

/// Opaque algebra handle.
pub struct SlAlgebra {
    inner: SuperAlgebra,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    FamilyError = 4,
    NotNilpotent = 5,
    Undefined = 6,
    SearchError = 7,
    Panic = 8,
    OtherError = 9,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> SlStatus {
    match e {
        Error::Parse { .. } | Error::AtLine { .. } | Error::Scalar(_) => SlStatus::ParseError,
        Error::Family(_) | Error::Shape(_) => SlStatus::FamilyError,
        Error::NotNilpotent(_) | Error::NotNilpotentAlgebra(..) => SlStatus::NotNilpotent,
        Error::Undefined(_) => SlStatus::Undefined,
        Error::Search(_) | Error::BudgetExceeded { .. } => SlStatus::SearchError,
        _ => SlStatus::OtherError,
    }
}

struct Fail(SlStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, converting errors and panics into a status and a last-error text.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            SlStatus::Ok
        }
        Ok(Err(Fail(status, message))) => {
            set_error(&message);
            status
        }
        Err(panic) => {
            let msg = panic.downcast_ref::<&str>().map(|s| s.to_string()).or_else(|| panic.downcast_ref::<String>().cloned());
            set_error(&format!("internal panic: {}", msg.unwrap_or_default()));
            SlStatus::Panic
        }
    }
}

unsafe fn text_arg<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(SlStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(SlStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn algebra_arg<'a>(p: *const SlAlgebra) -> Result<&'a SuperAlgebra, Fail> {
    p.as_ref().map(|h| &h.inner).ok_or_else(|| Fail(SlStatus::NullPointer, "null algebra handle".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(SlStatus::NullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(SlStatus::OtherError, "string contains NUL".into()))?;
    write_out(out, c.into_raw())
}

unsafe fn write_handle(out: *mut *mut SlAlgebra, a: SuperAlgebra) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(SlStatus::NullPointer, "null output pointer".into()));
    }
    out.write(Box::into_raw(Box::new(SlAlgebra { inner: a })));
    Ok(())
}

fn parse_csv(text: &str) -> Result<Vec<Scalar>, Fail> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|t| t.trim().parse::<Scalar>().map_err(|e| Fail(SlStatus::ParseError, format!("'{}': {e}", t.trim())))).collect()
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn sl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses `.lsa` text into a new handle.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_algebra_parse(text: *const c_char, out: *mut *mut SlAlgebra) -> SlStatus {
    guard(|| {
        let a = parse_lsa(text_arg(text)?)?;
        write_handle(out, a)
    })
}

/// Builds a family member. `params_csv` may be null for all-zero parameters.
///
/// # Safety
/// `tag` must be a NUL-terminated string, `params_csv` null or one, and `out`
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_family_build(tag: *const c_char, n: usize, m: usize, params_csv: *const c_char, out: *mut *mut SlAlgebra) -> SlStatus {
    guard(|| {
        let tag: FamilyTag = text_arg(tag)?.parse()?;
        let params = if params_csv.is_null() { vec![Scalar::zero(); tag.arity(n, m)?] } else { parse_csv(text_arg(params_csv)?)? };
        let a = FamilyId::new(tag, n, m, params)?.build()?;
        write_handle(out, a)
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `a` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sl_algebra_free(a: *mut SlAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// # Safety
/// `a` must be a live handle; `n` and `m` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sl_algebra_dims(a: *const SlAlgebra, n: *mut usize, m: *mut usize) -> SlStatus {
    guard(|| {
        let alg = algebra_arg(a)?;
        write_out(n, alg.n())?;
        write_out(m, alg.m())
    })
}

/// Number of basis triples violating the superidentity.
///
/// # Safety
/// `a` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_algebra_violation_count(a: *const SlAlgebra, out: *mut usize) -> SlStatus {
    guard(|| write_out(out, algebra_arg(a)?.superidentity_violations().len()))
}

/// # Safety
/// `a` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_algebra_nilindex(a: *const SlAlgebra, out: *mut usize) -> SlStatus {
    guard(|| match central_series(algebra_arg(a)?).nilindex() {
        Some(l) => write_out(out, l),
        None => Err(Fail(SlStatus::NotNilpotent, "central series stabilises at a nonzero term".into())),
    })
}

/// Canonical `.lsa` text.
///
/// # Safety
/// `a` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_algebra_serialize(a: *const SlAlgebra, out: *mut *mut c_char) -> SlStatus {
    guard(|| write_string(out, serialize_lsa(algebra_arg(a)?)))
}

/// Canonical fingerprint line with the default candidate policy.
///
/// # Safety
/// `a` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_algebra_fingerprint(a: *const SlAlgebra, out: *mut *mut c_char) -> SlStatus {
    guard(|| write_string(out, Fingerprint::of(algebra_arg(a)?).canonical()))
}

/// Characteristic sequence as text, e.g. `(4,1|4)`.
///
/// # Safety
/// `a` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_algebra_charseq(a: *const SlAlgebra, trials: usize, seed: u64, out: *mut *mut c_char) -> SlStatus {
    guard(|| {
        let c = characteristic_sequence(algebra_arg(a)?, CharSeqPolicy { trials, seed })?;
        write_string(out, c.to_string())
    })
}

/// Census report JSON for a full search over `coeffs_csv`.
///
/// # Safety
/// `coeffs_csv` must be a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_census_json(n: usize, m: usize, coeffs_csv: *const c_char, jobs: usize, out: *mut *mut c_char) -> SlStatus {
    guard(|| {
        let spec = SearchSpec::new(n, m, parse_csv(text_arg(coeffs_csv)?)?).with_jobs(jobs.max(1));
        write_string(out, census(&spec)?.to_json())
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
