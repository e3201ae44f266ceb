//! C interface to `instanton-core`.
//!
//! Forms are opaque handles created from spec JSON and released with
//! [`oi_form_free`]. Every fallible call returns an [`OiStatus`]; on failure
//! [`oi_last_error_message`] describes the problem. Strings returned through
//! `char **` out-parameters are owned by the caller and must be released with
//! [`oi_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use instanton_core::cohomology::h_table;
use instanton_core::conditions::{check_conditions, NondegStrategy};
use instanton_core::kronecker::{scan_lines, splitting_type, Verdict};
use instanton_core::linalg::rat;
use instanton_core::moduli::moduli_dim;
use instanton_core::spec_file::parse_spec_str;
use instanton_core::{Error, FlatForm};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OiStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Schema = 3,
    Shape = 4,
    RankMismatch = 5,
    DegenerateLine = 6,
    Precondition = 7,
    InvalidArgument = 8,
    Internal = 9,
}

/// A flattened form together with the bundle rank from its spec.
pub struct OiForm {
    form: FlatForm,
    r: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> OiStatus {
    match e {
        Error::Schema(_) | Error::NotSkew(_) => OiStatus::Schema,
        Error::ShapeMismatch(_) | Error::NonSquare { .. } | Error::OddOrder(_) => OiStatus::Shape,
        Error::RankMismatch { .. } => OiStatus::RankMismatch,
        Error::DegenerateLine => OiStatus::DegenerateLine,
        Error::PreconditionN(_) | Error::HypothesisViolation { .. } => OiStatus::Precondition,
        Error::Usage(_) | Error::Degenerate(_) | Error::BadSubset(_) => OiStatus::InvalidArgument,
        _ => OiStatus::Internal,
    }
}

fn fail(e: Error) -> OiStatus {
    set_error(e.to_string());
    status_of(&e)
}

/// Runs `f`, turning panics into [`OiStatus::Internal`].
fn guard(f: impl FnOnce() -> OiStatus) -> OiStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            OiStatus::Internal
        }
    }
}

unsafe fn form_ref<'a>(f: *const OiForm) -> Option<&'a OiForm> {
    f.as_ref()
}

/// Stores `s` in `*out` if `out` is non-null.
unsafe fn put_string(out: *mut *mut c_char, s: String) {
    if !out.is_null() {
        *out = CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut());
    }
}

/// Parses spec JSON into a new form handle.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn oi_form_from_spec_json(json: *const c_char, out: *mut *mut OiForm) -> OiStatus {
    guard(|| {
        if json.is_null() || out.is_null() {
            set_error("null pointer argument");
            return OiStatus::NullPointer;
        }
        let Ok(text) = CStr::from_ptr(json).to_str() else {
            set_error("spec is not valid UTF-8");
            return OiStatus::InvalidUtf8;
        };
        let spec = match parse_spec_str(text) {
            Ok(s) => s,
            Err(e) => return fail(e),
        };
        match spec.form() {
            Ok(form) => {
                *out = Box::into_raw(Box::new(OiForm { form, r: spec.r }));
                OiStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Releases a form handle. Null is ignored.
///
/// # Safety
/// `form` must come from [`oi_form_from_spec_json`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn oi_form_free(form: *mut OiForm) {
    if !form.is_null() {
        drop(Box::from_raw(form));
    }
}

/// # Safety
/// `form` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn oi_form_rank(form: *const OiForm, out: *mut usize) -> OiStatus {
    guard(|| {
        let (Some(f), false) = (form_ref(form), out.is_null()) else {
            set_error("null pointer argument");
            return OiStatus::NullPointer;
        };
        *out = f.form.rank();
        OiStatus::Ok
    })
}

/// Charge `c`, dimension `n` and the spec's bundle rank `r`. Any out-pointer may be null.
///
/// # Safety
/// `form` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn oi_form_dims(form: *const OiForm, c: *mut usize, n: *mut usize, r: *mut usize) -> OiStatus {
    guard(|| {
        let Some(f) = form_ref(form) else {
            set_error("null form");
            return OiStatus::NullPointer;
        };
        if !c.is_null() {
            *c = f.form.charge();
        }
        if !n.is_null() {
            *n = f.form.dim();
        }
        if !r.is_null() {
            *r = f.r;
        }
        OiStatus::Ok
    })
}

/// Checks the three conditions and the prechecks with the spec's `r`.
/// `*passes` is set to 1 or 0; the full report is written as JSON to
/// `*json_out` when it is non-null.
///
/// # Safety
/// `form` must be a live handle, `passes` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn oi_check_conditions(
    form: *const OiForm,
    samples: usize,
    seed: u64,
    passes: *mut i32,
    json_out: *mut *mut c_char,
) -> OiStatus {
    guard(|| {
        let (Some(f), false) = (form_ref(form), passes.is_null()) else {
            set_error("null pointer argument");
            return OiStatus::NullPointer;
        };
        let rep = check_conditions(&f.form, f.r, NondegStrategy { samples, seed, bound: 10 });
        *passes = rep.passes() as i32;
        put_string(json_out, serde_json::to_string(&rep).expect("serializes"));
        OiStatus::Ok
    })
}

/// Splitting type on the line through integer points `p` and `q` of length
/// `len = n + 1`. `*trivial` is set to 1 for a trivial restriction, 0 for a
/// jumping line.
///
/// # Safety
/// `p` and `q` must point to `len` readable values; `trivial` must be valid.
#[no_mangle]
pub unsafe extern "C" fn oi_splitting_type(
    form: *const OiForm,
    p: *const i64,
    q: *const i64,
    len: usize,
    trivial: *mut i32,
    json_out: *mut *mut c_char,
) -> OiStatus {
    guard(|| {
        let Some(f) = form_ref(form) else {
            set_error("null form");
            return OiStatus::NullPointer;
        };
        if p.is_null() || q.is_null() || trivial.is_null() {
            set_error("null pointer argument");
            return OiStatus::NullPointer;
        }
        let p: Vec<_> = std::slice::from_raw_parts(p, len).iter().map(|&x| rat(x)).collect();
        let q: Vec<_> = std::slice::from_raw_parts(q, len).iter().map(|&x| rat(x)).collect();
        match splitting_type(&f.form, &p, &q) {
            Ok(v) => {
                *trivial = (v.verdict == Verdict::Trivial) as i32;
                put_string(json_out, serde_json::to_string(&v).expect("serializes"));
                OiStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Classifies `samples` seeded random lines with coordinates in `[-bound, bound]`.
///
/// # Safety
/// `form` must be a live handle; `trivial` and `jumping` may be null.
#[no_mangle]
pub unsafe extern "C" fn oi_scan_lines(
    form: *const OiForm,
    samples: usize,
    seed: u64,
    bound: i64,
    trivial: *mut usize,
    jumping: *mut usize,
    json_out: *mut *mut c_char,
) -> OiStatus {
    guard(|| {
        let Some(f) = form_ref(form) else {
            set_error("null form");
            return OiStatus::NullPointer;
        };
        if samples == 0 || bound < 1 {
            set_error("samples and bound must be at least 1");
            return OiStatus::InvalidArgument;
        }
        let rep = scan_lines(&f.form, samples, seed, bound);
        if !trivial.is_null() {
            *trivial = rep.trivial;
        }
        if !jumping.is_null() {
            *jumping = rep.jumping;
        }
        put_string(json_out, serde_json::to_string(&rep).expect("serializes"));
        OiStatus::Ok
    })
}

/// Cohomology table for `kmin <= k <= kmax` as JSON in `*json_out`.
///
/// # Safety
/// `form` must be a live handle and `json_out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn oi_cohomology_table(
    form: *const OiForm,
    kmin: i64,
    kmax: i64,
    json_out: *mut *mut c_char,
) -> OiStatus {
    guard(|| {
        let (Some(f), false) = (form_ref(form), json_out.is_null()) else {
            set_error("null pointer argument");
            return OiStatus::NullPointer;
        };
        match h_table(&f.form, f.r, kmin, kmax) {
            Ok(t) => {
                put_string(json_out, serde_json::to_string(&t).expect("serializes"));
                OiStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `dim` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn oi_moduli_dim(c: usize, n: usize, dim: *mut i64) -> OiStatus {
    guard(|| {
        if dim.is_null() {
            set_error("null pointer argument");
            return OiStatus::NullPointer;
        }
        match moduli_dim(c, n) {
            Ok(m) => {
                *dim = m.dim;
                OiStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn oi_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn oi_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
