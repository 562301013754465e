//! C ABI for the three-level cooling-cycle toolkit.
//!
//! The surface follows the usual opaque-handle pattern: a scenario is
//! created from configuration text or a file, queried through plain structs,
//! and freed by the caller. Every fallible call returns a [`TricoolStatus`];
//! on failure a thread-local message with the details is available through
//! [`tricool_last_error_message`].
//!
//! All functions are safe to call from any thread; handles must not be
//! shared between threads without external synchronization.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use tricool::analysis;
use tricool::config;
use tricool::error::Error;
use tricool::model::Scenario;
use tricool::steady_state::{closed_form_coefficients, steady_state_closed_form};
use tricool::thermo;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TricoolStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// The configuration text or a scenario parameter is invalid.
    InvalidConfig = 2,
    /// The request is well-formed but has no answer in this regime
    /// (empty cooling window, no root, non-convergence).
    DomainError = 3,
    /// File-system failure while reading a configuration file.
    IoError = 4,
    /// The configuration text was not valid UTF-8.
    InvalidUtf8 = 5,
    /// Unexpected internal failure.
    InternalError = 6,
}

/// Opaque validated scenario handle.
pub struct TricoolScenario {
    inner: Scenario,
}

/// Stationary state: populations and the driven coherence.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TricoolSteadyState {
    pub p11: f64,
    pub p22: f64,
    pub p33: f64,
    pub p32_re: f64,
    pub p32_im: f64,
}

/// Cycle-averaged thermodynamics. The COP fields are meaningful only when
/// the matching `has_*` flag is set.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TricoolThermoReport {
    pub wdot: f64,
    pub qdot_h: f64,
    pub qdot_c: f64,
    pub qdot_e: f64,
    pub entropy_rate: f64,
    pub first_law_residual: f64,
    pub has_cop_work: bool,
    pub cop_work: f64,
    pub has_cop_absorption: bool,
    pub cop_absorption: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(error: &Error) -> TricoolStatus {
    match error {
        Error::InvalidScenario { .. } | Error::Config { .. } => TricoolStatus::InvalidConfig,
        Error::Domain(_) => TricoolStatus::DomainError,
        Error::Io(_) => TricoolStatus::IoError,
    }
}

fn fail(error: &Error) -> TricoolStatus {
    set_last_error(&error.to_string());
    status_of(error)
}

/// Run a fallible body, translating errors and panics into status codes.
fn guarded(body: impl FnOnce() -> Result<(), TricoolStatus>) -> TricoolStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => TricoolStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_last_error("internal panic");
            TricoolStatus::InternalError
        }
    }
}

/// # Safety
/// `ptr` must be null or point to a NUL-terminated string.
unsafe fn required_str<'a>(ptr: *const c_char) -> Result<&'a str, TricoolStatus> {
    if ptr.is_null() {
        set_last_error("null string argument");
        return Err(TricoolStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_last_error("string argument is not valid UTF-8");
        TricoolStatus::InvalidUtf8
    })
}

unsafe fn required_out<'a, T>(ptr: *mut T) -> Result<&'a mut T, TricoolStatus> {
    if ptr.is_null() {
        set_last_error("null output argument");
        return Err(TricoolStatus::NullArgument);
    }
    Ok(&mut *ptr)
}

unsafe fn required_handle<'a>(
    handle: *const TricoolScenario,
) -> Result<&'a Scenario, TricoolStatus> {
    if handle.is_null() {
        set_last_error("null scenario handle");
        return Err(TricoolStatus::NullArgument);
    }
    Ok(&(*handle).inner)
}

fn boxed(scenario: Scenario, out: &mut *mut TricoolScenario) {
    *out = Box::into_raw(Box::new(TricoolScenario { inner: scenario }));
}

/// Copy the last error message of this thread into `buffer` (NUL-terminated,
/// truncating to `capacity`). Returns the full length of the message
/// including the NUL terminator; call with a null buffer to query the size.
///
/// # Safety
/// `buffer` must be null or point to at least `capacity` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn tricool_last_error_message(buffer: *mut c_char, capacity: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let message = slot.borrow();
        let bytes = message.as_bytes_with_nul();
        if !buffer.is_null() && capacity > 0 {
            let n = bytes.len().min(capacity - 1);
            std::ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buffer, n);
            *buffer.add(n) = 0;
        }
        bytes.len()
    })
}

/// Parse configuration text (see the config-file format in the project
/// README) into a new scenario handle. The caller owns the handle and must
/// release it with [`tricool_scenario_free`].
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tricool_scenario_parse(
    text: *const c_char,
    out: *mut *mut TricoolScenario,
) -> TricoolStatus {
    guarded(|| {
        let out = required_out(out)?;
        let text = required_str(text)?;
        let scenario = config::parse_str(text).map_err(|e| fail(&e))?;
        boxed(scenario, out);
        Ok(())
    })
}

/// Parse a configuration file into a new scenario handle.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tricool_scenario_from_file(
    path: *const c_char,
    out: *mut *mut TricoolScenario,
) -> TricoolStatus {
    guarded(|| {
        let out = required_out(out)?;
        let path = required_str(path)?;
        let scenario = config::parse_file(path).map_err(|e| fail(&e))?;
        boxed(scenario, out);
        Ok(())
    })
}

/// Release a scenario handle. Null is ignored.
///
/// # Safety
/// `scenario` must be a handle obtained from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tricool_scenario_free(scenario: *mut TricoolScenario) {
    if !scenario.is_null() {
        drop(Box::from_raw(scenario));
    }
}

/// Update one scenario parameter in place, revalidating the scenario.
/// Accepted keys: `delta21`, `epsilon`, `t_c`, `t_e`, `lambda_e`.
///
/// # Safety
/// `scenario` must be a live handle; `key` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn tricool_scenario_set(
    scenario: *mut TricoolScenario,
    key: *const c_char,
    value: f64,
) -> TricoolStatus {
    guarded(|| {
        if scenario.is_null() {
            set_last_error("null scenario handle");
            return Err(TricoolStatus::NullArgument);
        }
        let key = required_str(key)?;
        let current = &mut (*scenario).inner;
        let updated = match key {
            "delta21" => current.with_delta21(value),
            "epsilon" => current.with_epsilon(value),
            "t_c" => current.with_cold_temperature(value),
            "t_e" => current.with_env_temperature(value),
            "lambda_e" => current.with_env_coupling(value),
            other => Err(Error::domain(format!(
                "unknown parameter {other:?} \
                 (expected delta21, epsilon, t_c, t_e or lambda_e)"
            ))),
        }
        .map_err(|e| fail(&e))?;
        *current = updated;
        Ok(())
    })
}

/// Write the canonical configuration text of the scenario into `buffer`
/// (NUL-terminated, truncating). Returns the status; the full length
/// including the NUL terminator is stored in `*length`.
///
/// # Safety
/// Pointers must be valid; `buffer` may be null to query the size.
#[no_mangle]
pub unsafe extern "C" fn tricool_scenario_config(
    scenario: *const TricoolScenario,
    buffer: *mut c_char,
    capacity: usize,
    length: *mut usize,
) -> TricoolStatus {
    guarded(|| {
        let scenario = required_handle(scenario)?;
        let length = required_out(length)?;
        let text = config::to_config_string(scenario);
        let bytes = text.as_bytes();
        *length = bytes.len() + 1;
        if !buffer.is_null() && capacity > 0 {
            let n = bytes.len().min(capacity - 1);
            std::ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buffer, n);
            *buffer.add(n) = 0;
        }
        Ok(())
    })
}

/// Stationary state of the scenario.
///
/// # Safety
/// `scenario` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tricool_steady_state(
    scenario: *const TricoolScenario,
    out: *mut TricoolSteadyState,
) -> TricoolStatus {
    guarded(|| {
        let scenario = required_handle(scenario)?;
        let out = required_out(out)?;
        let rates = scenario.rates();
        let ss = steady_state_closed_form(&closed_form_coefficients(&rates), &rates)
            .map_err(|e| fail(&e))?;
        *out = TricoolSteadyState {
            p11: ss.p11,
            p22: ss.p22,
            p33: ss.p33,
            p32_re: ss.p32.re,
            p32_im: ss.p32.im,
        };
        Ok(())
    })
}

/// Full thermodynamic report of the scenario.
///
/// # Safety
/// `scenario` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tricool_thermo_report(
    scenario: *const TricoolScenario,
    out: *mut TricoolThermoReport,
) -> TricoolStatus {
    guarded(|| {
        let scenario = required_handle(scenario)?;
        let out = required_out(out)?;
        let report = thermo::report(scenario).map_err(|e| fail(&e))?;
        *out = TricoolThermoReport {
            wdot: report.w_dot,
            qdot_h: report.q_h,
            qdot_c: report.q_c,
            qdot_e: report.q_e,
            entropy_rate: report.s_dot,
            first_law_residual: report.first_law_residual,
            has_cop_work: report.cop_work.is_some(),
            cop_work: report.cop_work.unwrap_or(0.0),
            has_cop_absorption: report.cop_absorption.is_some(),
            cop_absorption: report.cop_absorption.unwrap_or(0.0),
        };
        Ok(())
    })
}

/// Locate the cooling window over delta21. `*nonempty` reports whether any
/// cooling occurs; `*delta21_max` is zero for an empty window.
///
/// # Safety
/// `scenario` must be a live handle; out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn tricool_cooling_window(
    scenario: *const TricoolScenario,
    delta21_max: *mut f64,
    nonempty: *mut bool,
) -> TricoolStatus {
    guarded(|| {
        let scenario = required_handle(scenario)?;
        let delta21_max = required_out(delta21_max)?;
        let nonempty = required_out(nonempty)?;
        let window = analysis::cooling_window(scenario).map_err(|e| fail(&e))?;
        *delta21_max = window.delta21_max;
        *nonempty = window.nonempty;
        Ok(())
    })
}

/// Minimum drive coupling for cooling at the scenario's delta21. The
/// closed-form estimate is reported alongside the numeric root when its
/// radicand is non-negative.
///
/// # Safety
/// `scenario` must be a live handle; out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn tricool_epsilon_min(
    scenario: *const TricoolScenario,
    numeric: *mut f64,
    formula: *mut f64,
    has_formula: *mut bool,
) -> TricoolStatus {
    guarded(|| {
        let scenario = required_handle(scenario)?;
        let numeric = required_out(numeric)?;
        let formula = required_out(formula)?;
        let has_formula = required_out(has_formula)?;
        let result = analysis::epsilon_min(scenario).map_err(|e| fail(&e))?;
        *numeric = result.numeric;
        *formula = result.formula.unwrap_or(0.0);
        *has_formula = result.formula.is_some();
        Ok(())
    })
}

/// Maximize the cooling rate over delta21 inside the cooling window.
///
/// # Safety
/// `scenario` must be a live handle; out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn tricool_maximize_cooling_rate(
    scenario: *const TricoolScenario,
    delta21_star: *mut f64,
    qdot_c_max: *mut f64,
) -> TricoolStatus {
    guarded(|| {
        let scenario = required_handle(scenario)?;
        let delta21_star = required_out(delta21_star)?;
        let qdot_c_max = required_out(qdot_c_max)?;
        let optimum = analysis::maximize_cooling_rate(scenario).map_err(|e| fail(&e))?;
        *delta21_star = optimum.delta21_star;
        *qdot_c_max = optimum.q_c_max;
        Ok(())
    })
}
