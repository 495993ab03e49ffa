//! C interface. Classes are opaque handles; every call returns a
//! [`ScascStatus`] and writes its result through an out pointer. The message
//! of the last failure on the calling thread is kept for [`scasc_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use scasc::admissibility::classify;
use scasc::discriminator::{find_discriminator_term, sc_verdict, VerdictOptions};
use scasc::free::{free_algebra, GeneratingClass};
use scasc::io::{parse_class, verify_verdict_report, ClassificationReport, VerdictReport};
use scasc::term::parse_quasi_identity;
use scasc::{Error, Limits};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScascStatus {
    Ok = 0,
    InvalidInput = 1,
    Capacity = 2,
    Internal = 3,
    NullPointer = 4,
    Utf8 = 5,
}

/// Search limits. Pass a null pointer to use [`scasc_limits_default`].
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct ScascLimits {
    pub free_elements: usize,
    pub subset_carrier: usize,
    pub product_size: usize,
    pub assignments: u64,
    pub table_entries: usize,
    pub closure_steps: u64,
}

impl From<Limits> for ScascLimits {
    fn from(l: Limits) -> Self {
        ScascLimits {
            free_elements: l.free_elements,
            subset_carrier: l.subset_carrier,
            product_size: l.product_size,
            assignments: l.assignments,
            table_entries: l.table_entries,
            closure_steps: l.closure_steps,
        }
    }
}

impl From<ScascLimits> for Limits {
    fn from(l: ScascLimits) -> Self {
        Limits {
            free_elements: l.free_elements,
            subset_carrier: l.subset_carrier,
            product_size: l.product_size,
            assignments: l.assignments,
            table_entries: l.table_entries,
            closure_steps: l.closure_steps,
        }
    }
}

/// A generating class with its member names.
pub struct ScascClass {
    names: Vec<String>,
    class: GeneratingClass,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(ScascStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::CapacityExceeded { .. } => ScascStatus::Capacity,
            Error::Consistency(_) => ScascStatus::Internal,
            _ => ScascStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn run(f: impl FnOnce() -> Result<(), Failure>) -> ScascStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ScascStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside the library".into());
            ScascStatus::Internal
        }
    }
}

fn null() -> Failure {
    Failure(ScascStatus::NullPointer, "null pointer argument".into())
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(ScascStatus::Utf8, e.to_string()))
}

unsafe fn handle<'a>(p: *const ScascClass) -> Result<&'a ScascClass, Failure> {
    p.as_ref().ok_or_else(null)
}

unsafe fn limits(p: *const ScascLimits) -> Limits {
    p.as_ref().map_or_else(Limits::default, |l| (*l).into())
}

fn owned(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|e| Failure(ScascStatus::Internal, e.to_string()))
}

#[no_mangle]
pub extern "C" fn scasc_limits_default() -> ScascLimits {
    Limits::default().into()
}

/// Parses an algebra file. On success `*out` owns a handle for
/// [`scasc_class_free`].
///
/// # Safety
/// `source` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn scasc_class_parse(source: *const c_char, out: *mut *mut ScascClass) -> ScascStatus {
    run(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = ptr::null_mut();
        let (names, class) = parse_class(text(source)?)?;
        *out = Box::into_raw(Box::new(ScascClass { names, class }));
        Ok(())
    })
}

/// # Safety
/// `cls` must come from [`scasc_class_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn scasc_class_free(cls: *mut ScascClass) {
    if !cls.is_null() {
        drop(Box::from_raw(cls));
    }
}

/// # Safety
/// `cls` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn scasc_class_member_count(cls: *const ScascClass, out: *mut usize) -> ScascStatus {
    run(|| {
        let c = handle(cls)?;
        *out.as_mut().ok_or_else(null)? = c.class.members().len();
        Ok(())
    })
}

/// Number of elements of the free algebra of rank `k`.
///
/// # Safety
/// `cls` must be a live handle, `lim` null or valid, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn scasc_free_algebra_size(
    cls: *const ScascClass,
    k: usize,
    lim: *const ScascLimits,
    out: *mut usize,
) -> ScascStatus {
    run(|| {
        let c = handle(cls)?;
        let out = out.as_mut().ok_or_else(null)?;
        *out = free_algebra(&c.class, k, &limits(lim))?.len();
        Ok(())
    })
}

/// A discriminator term in the text grammar, or a null `*out` when none
/// exists. Free the string with [`scasc_string_free`].
///
/// # Safety
/// `cls` must be a live handle, `lim` null or valid, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn scasc_discriminator_term(
    cls: *const ScascClass,
    lim: *const ScascLimits,
    out: *mut *mut c_char,
) -> ScascStatus {
    run(|| {
        let c = handle(cls)?;
        let out = out.as_mut().ok_or_else(null)?;
        *out = ptr::null_mut();
        if let Some(t) = find_discriminator_term(&c.class, &limits(lim))? {
            *out = owned(t.to_string_with(c.class.signature()))?;
        }
        Ok(())
    })
}

/// The SC/ASC verdict as JSON, re-verified before it is returned.
///
/// # Safety
/// `cls` must be a live handle, `lim` null or valid, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn scasc_verdict_json(
    cls: *const ScascClass,
    lim: *const ScascLimits,
    out: *mut *mut c_char,
) -> ScascStatus {
    run(|| {
        let c = handle(cls)?;
        let out = out.as_mut().ok_or_else(null)?;
        *out = ptr::null_mut();
        let limits = limits(lim);
        let v = sc_verdict(
            &c.class,
            &VerdictOptions {
                limits,
                refutation: None,
            },
        )?;
        let report = VerdictReport::new(&v, &c.names, c.class.signature());
        verify_verdict_report(&report, &c.class, &limits)?;
        let json = serde_json::to_string(&report).map_err(|e| Failure(ScascStatus::Internal, e.to_string()))?;
        *out = owned(json)?;
        Ok(())
    })
}

/// Classification of a quasi-identity as JSON.
///
/// # Safety
/// `cls` must be a live handle, `q` NUL-terminated, `lim` null or valid,
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn scasc_classify_json(
    cls: *const ScascClass,
    q: *const c_char,
    lim: *const ScascLimits,
    out: *mut *mut c_char,
) -> ScascStatus {
    run(|| {
        let c = handle(cls)?;
        let out = out.as_mut().ok_or_else(null)?;
        *out = ptr::null_mut();
        let sig = c.class.signature();
        let q = parse_quasi_identity(text(q)?, sig).map_err(Error::from)?;
        let cl = classify(&c.class, &q, &limits(lim))?;
        let report = ClassificationReport::new(&q, &cl, &c.names, sig);
        let json = serde_json::to_string(&report).map_err(|e| Failure(ScascStatus::Internal, e.to_string()))?;
        *out = owned(json)?;
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn scasc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn scasc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
