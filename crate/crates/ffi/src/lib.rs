//! C interface to `boolcube`.
//!
//! Every function returns a [`BcStatus`]. On failure the message is available
//! from [`bc_last_error_message`] on the calling thread. Handles are opaque and
//! must be released with the matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use boolcube::analysis::noise_sensitivity_exact;
use boolcube::learner::{learn, LearnMode, LearnedModel, LearnerConfig};
use boolcube::zoo::{is_monotone, is_self_bounding, is_subadditive, is_submodular, is_xos};
use boolcube::{CubeFunction, Error, Spectrum};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ResourceLimit = 3,
    Failure = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BcClass {
    Monotone = 0,
    Submodular = 1,
    Subadditive = 2,
    SelfBounding = 3,
    Xos = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BcLearnMode {
    Submodular = 0,
    Xos = 1,
}

/// A real-valued function on the cube.
pub struct BcFunction(CubeFunction);

/// Fourier coefficients of a function.
pub struct BcSpectrum(Spectrum);

/// A learned hypothesis.
pub struct BcModel(LearnedModel);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> BcStatus {
    match e {
        _ if e.is_resource_limit() => BcStatus::ResourceLimit,
        Error::LinearProgram(_) => BcStatus::Failure,
        _ => BcStatus::InvalidArgument,
    }
}

struct Fail(BcStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(BcStatus::NullPointer, format!("{what} is null"))
}

fn guard<F: FnOnce() -> Result<(), Fail>>(body: F) -> BcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            BcStatus::Ok
        }
        Ok(Err(Fail(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            BcStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn copy_out(src: &[f64], out: *mut f64, len: usize) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output buffer"));
    }
    if len < src.len() {
        return Err(Fail(BcStatus::InvalidArgument, format!("buffer holds {len} values, need {}", src.len())));
    }
    ptr::copy_nonoverlapping(src.as_ptr(), out, src.len());
    Ok(())
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn bc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a function from its `2^n` values, indexed by bitmask.
///
/// # Safety
/// `values` must point to `len` readable doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bc_function_new(n: usize, values: *const f64, len: usize, out: *mut *mut BcFunction) -> BcStatus {
    guard(|| {
        if values.is_null() {
            return Err(null("values"));
        }
        let table = std::slice::from_raw_parts(values, len).to_vec();
        let f = CubeFunction::new(n, table)?;
        write(out, Box::into_raw(Box::new(BcFunction(f))), "out")
    })
}

/// Builds a function from a JSON spec document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bc_function_from_spec(json: *const c_char, out: *mut *mut BcFunction) -> BcStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Fail(BcStatus::InvalidArgument, format!("spec is not UTF-8: {e}")))?;
        let spec = boolcube::cli::parse_spec(text).map_err(|e| Fail(BcStatus::InvalidArgument, e.message))?;
        let f = spec.function.build()?;
        write(out, Box::into_raw(Box::new(BcFunction(f))), "out")
    })
}

/// # Safety
/// `f` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn bc_function_free(f: *mut BcFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bc_function_dimension(f: *const BcFunction, out: *mut usize) -> BcStatus {
    guard(|| write(out, deref(f, "function")?.0.n(), "out"))
}

/// Copies the `2^n` values into `out`.
///
/// # Safety
/// `f` must be a live handle and `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn bc_function_values(f: *const BcFunction, out: *mut f64, len: usize) -> BcStatus {
    guard(|| copy_out(deref(f, "function")?.0.values(), out, len))
}

/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bc_function_transform(f: *const BcFunction, out: *mut *mut BcSpectrum) -> BcStatus {
    guard(|| {
        let s = deref(f, "function")?.0.transform();
        write(out, Box::into_raw(Box::new(BcSpectrum(s))), "out")
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn bc_spectrum_free(s: *mut BcSpectrum) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Copies the `2^n` coefficients into `out`.
///
/// # Safety
/// `s` must be a live handle and `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn bc_spectrum_coefficients(s: *const BcSpectrum, out: *mut f64, len: usize) -> BcStatus {
    guard(|| copy_out(deref(s, "spectrum")?.0.coeffs(), out, len))
}

/// Copies the `n + 1` level weights into `out`.
///
/// # Safety
/// `s` must be a live handle and `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn bc_spectrum_level_weights(s: *const BcSpectrum, out: *mut f64, len: usize) -> BcStatus {
    guard(|| copy_out(&deref(s, "spectrum")?.0.level_weights(), out, len))
}

/// Squared mass above level `d`.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bc_spectrum_tail_weight(s: *const BcSpectrum, d: usize, out: *mut f64) -> BcStatus {
    guard(|| write(out, deref(s, "spectrum")?.0.tail_weight(d)?, "out"))
}

/// Smallest level whose tail is at most `eps^2`.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bc_spectrum_l2_degree(s: *const BcSpectrum, eps: f64, out: *mut usize) -> BcStatus {
    guard(|| write(out, deref(s, "spectrum")?.0.l2_degree(eps)?, "out"))
}

/// Tests class membership. `a` is used only by the self-bounding test.
///
/// # Safety
/// `f` must be a live handle and `holds` writable.
#[no_mangle]
pub unsafe extern "C" fn bc_check_class(f: *const BcFunction, class: BcClass, a: f64, holds: *mut bool) -> BcStatus {
    guard(|| {
        let f = &deref(f, "function")?.0;
        let result = match class {
            BcClass::Monotone => is_monotone(f)?.holds(),
            BcClass::Submodular => is_submodular(f)?.holds(),
            BcClass::Subadditive => is_subadditive(f)?.holds(),
            BcClass::SelfBounding => is_self_bounding(f, a)?.holds(),
            BcClass::Xos => match is_xos(f) {
                Ok(outcome) => outcome.holds(),
                Err(Error::NotInXosDomain(_)) => false,
                Err(e) => return Err(e.into()),
            },
        };
        write(holds, result, "holds")
    })
}

/// `Pr[h(x) != h(y)]` for a 0/1-valued function.
///
/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bc_noise_sensitivity(f: *const BcFunction, alpha: f64, out: *mut f64) -> BcStatus {
    guard(|| write(out, noise_sensitivity_exact(&deref(f, "function")?.0, alpha)?, "out"))
}

/// Learns `f` from random examples with default parameters and reports the
/// exact error of the hypothesis.
///
/// # Safety
/// `f` must be a live handle; `model` and `error` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bc_learn(
    f: *const BcFunction,
    eps: f64,
    seed: u64,
    mode: BcLearnMode,
    model: *mut *mut BcModel,
    error: *mut f64,
) -> BcStatus {
    guard(|| {
        let f = &deref(f, "function")?.0;
        if model.is_null() || error.is_null() {
            return Err(null("output"));
        }
        let mode = match mode {
            BcLearnMode::Submodular => LearnMode::Submodular,
            BcLearnMode::Xos => LearnMode::Xos,
        };
        let (learned, report) = learn(f, &LearnerConfig::new(eps, seed), mode)?;
        write(error, report.exact_error, "error")?;
        write(model, Box::into_raw(Box::new(BcModel(learned))), "model")
    })
}

/// # Safety
/// `model` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bc_model_predict(model: *const BcModel, x: usize, out: *mut f64) -> BcStatus {
    guard(|| {
        let m = &deref(model, "model")?.0;
        if x >> m.n != 0 {
            return Err(Fail(BcStatus::InvalidArgument, format!("point {x} is outside dimension {}", m.n)));
        }
        write(out, m.predict(x), "out")
    })
}

/// # Safety
/// `model` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn bc_model_free(model: *mut BcModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}
