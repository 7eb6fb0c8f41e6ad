//! C interface to `ihall`. Handles are opaque; every call returns an
//! [`IhallStatus`], and on failure [`ihall_last_error`] describes it.
//! Strings returned through out-pointers are owned by the caller and must be
//! released with [`ihall_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use ihall::cli::parse_element;
use ihall::ihall::IHall;
use ihall::quiver::{Ambient, Quiver};
use ihall::suites::{run_suite, Outcome, SuiteConfig};
use ihall::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IhallStatus {
    Ok = 0,
    CheckFailed = 1,
    InvalidArgument = 2,
    BudgetExhausted = 3,
    Parse = 4,
    NullPointer = 5,
    Internal = 6,
}

/// An iHall algebra over `F_q` for one quiver.
pub struct IhallAlgebra {
    inner: Arc<IHall>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn status_of(e: &Error) -> IhallStatus {
    match e {
        Error::SearchTooLarge { .. } => IhallStatus::BudgetExhausted,
        Error::Parse(_) => IhallStatus::Parse,
        _ => IhallStatus::InvalidArgument,
    }
}

/// Runs `f`, turning errors and panics into a status plus a last-error message.
fn guard(f: impl FnOnce() -> Result<IhallStatus, (IhallStatus, String)>) -> IhallStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            IhallStatus::Internal
        }
    }
}

fn lib_err(e: Error) -> (IhallStatus, String) {
    (status_of(&e), e.to_string())
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (IhallStatus, String)> {
    if p.is_null() {
        return Err((IhallStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (IhallStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

fn out_string(out: *mut *mut c_char, s: String) -> Result<(), (IhallStatus, String)> {
    let c = CString::new(s).map_err(|_| (IhallStatus::Internal, "output contains a nul byte".to_string()))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Creates the algebra for `quiver` (for example `"cn:2"`) over `F_q`.
///
/// # Safety
/// `quiver` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ihall_algebra_new(quiver: *const c_char, q: u32, out: *mut *mut IhallAlgebra) -> IhallStatus {
    guard(|| {
        if out.is_null() {
            return Err((IhallStatus::NullPointer, "out is null".into()));
        }
        *out = ptr::null_mut();
        let spec = str_arg(quiver, "quiver")?;
        let qv = Quiver::parse(spec).map_err(lib_err)?;
        let amb = Ambient::new(qv, q).map_err(lib_err)?;
        let inner = IHall::new(ihall::hall::HallAlgebra::new(amb));
        *out = Box::into_raw(Box::new(IhallAlgebra { inner }));
        Ok(IhallStatus::Ok)
    })
}

/// # Safety
/// `alg` must come from [`ihall_algebra_new`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ihall_algebra_free(alg: *mut IhallAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Multiplies two elements in canonical rendering (or bare class labels such
/// as `"1:1"`) and writes the rendered product to `out`.
///
/// # Safety
/// `alg` must be a live handle, `a` and `b` nul-terminated strings, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ihall_product(
    alg: *const IhallAlgebra,
    a: *const c_char,
    b: *const c_char,
    out: *mut *mut c_char,
) -> IhallStatus {
    guard(|| {
        if alg.is_null() || out.is_null() {
            return Err((IhallStatus::NullPointer, "alg or out is null".into()));
        }
        *out = ptr::null_mut();
        let ih = &(*alg).inner;
        let x = parse_element(ih, str_arg(a, "a")?).map_err(lib_err)?;
        let y = parse_element(ih, str_arg(b, "b")?).map_err(lib_err)?;
        let p = ih.product(&x, &y).map_err(lib_err)?;
        out_string(out, p.to_string())?;
        Ok(IhallStatus::Ok)
    })
}

/// Runs a verification suite with its default parameters, optionally
/// restricted to one quiver (`quiver` may be null) and one field order
/// (`q == 0` keeps the defaults). Writes the JSON report to `report` and
/// returns `Ok`, `CheckFailed` or `BudgetExhausted` accordingly.
///
/// # Safety
/// `suite` must be nul-terminated, `quiver` null or nul-terminated, `report` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ihall_verify(
    suite: *const c_char,
    quiver: *const c_char,
    q: u32,
    seed: u64,
    report: *mut *mut c_char,
) -> IhallStatus {
    guard(|| {
        if report.is_null() {
            return Err((IhallStatus::NullPointer, "report is null".into()));
        }
        *report = ptr::null_mut();
        let id = str_arg(suite, "suite")?;
        let mut cfg = SuiteConfig { seed, ..SuiteConfig::default() };
        if !quiver.is_null() {
            cfg.quivers = vec![Quiver::parse(str_arg(quiver, "quiver")?).map_err(lib_err)?];
        }
        if q != 0 {
            cfg.qs = vec![q];
        }
        let r = run_suite(id, &cfg).map_err(lib_err)?;
        out_string(report, r.to_json())?;
        Ok(match r.outcome(false) {
            Outcome::Ok => IhallStatus::Ok,
            Outcome::CheckFailed => IhallStatus::CheckFailed,
            Outcome::BudgetExhausted => IhallStatus::BudgetExhausted,
        })
    })
}

/// Message for the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn ihall_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ihall_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
