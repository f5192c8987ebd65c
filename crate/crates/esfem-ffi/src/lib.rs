//! C ABI for the esfem library.
//!
//! All handles are opaque; every fallible call returns an [`EsfemStatus`]
//! and stores a message retrievable with [`esfem_last_error`] on failure.
//! Out-parameters are written only on `ESFEM_STATUS_OK`. Every `*_new` /
//! `*_parse` result must be released with the matching `*_free`.

use esfem::experiments::{run, run_example1, run_verify, RunConfig};
use esfem::norms::{eoc, ErrorReport};
use esfem::Error;
use libc::{c_char, size_t};
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::path::PathBuf;

/// Status codes mirroring the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EsfemStatus {
    Ok = 0,
    /// Any failure not covered by a more specific code.
    Error = 1,
    /// The linear solver did not reach its tolerance.
    SolverDiverged = 2,
    /// Malformed or inconsistent run configuration.
    InvalidConfig = 3,
    /// A required pointer argument was null.
    NullPointer = 4,
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

fn status_of(error: &Error) -> EsfemStatus {
    match error {
        Error::SolverDiverged(_) => EsfemStatus::SolverDiverged,
        Error::Config(_) => EsfemStatus::InvalidConfig,
        _ => EsfemStatus::Error,
    }
}

fn fail(error: &Error) -> EsfemStatus {
    set_last_error(&error.to_string());
    status_of(error)
}

/// Opaque run configuration.
pub struct EsfemConfig(RunConfig);

/// Opaque convergence table.
pub struct EsfemReport(ErrorReport);

/// Copy the last error message of this thread into `buffer` (truncated,
/// always NUL-terminated when `capacity > 0`) and return the full message
/// length in bytes, excluding the terminator.
#[no_mangle]
pub extern "C" fn esfem_last_error(buffer: *mut c_char, capacity: size_t) -> size_t {
    LAST_ERROR.with(|slot| {
        let message = slot.borrow();
        let bytes = message.as_bytes();
        if !buffer.is_null() && capacity > 0 {
            let n = bytes.len().min(capacity - 1);
            unsafe {
                std::ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buffer, n);
                *buffer.add(n) = 0;
            }
        }
        bytes.len()
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn esfem_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Parse a JSON run configuration. Returns null on failure (see
/// [`esfem_last_error`]).
#[no_mangle]
pub unsafe extern "C" fn esfem_config_parse(json: *const c_char) -> *mut EsfemConfig {
    if json.is_null() {
        set_last_error("null config string");
        return std::ptr::null_mut();
    }
    let text = match CStr::from_ptr(json).to_str() {
        Ok(t) => t,
        Err(_) => {
            set_last_error("config string is not valid UTF-8");
            return std::ptr::null_mut();
        }
    };
    match RunConfig::from_json(text) {
        Ok(config) => Box::into_raw(Box::new(EsfemConfig(config))),
        Err(e) => {
            set_last_error(&e.to_string());
            std::ptr::null_mut()
        }
    }
}

#[no_mangle]
pub unsafe extern "C" fn esfem_config_free(config: *mut EsfemConfig) {
    if !config.is_null() {
        drop(Box::from_raw(config));
    }
}

/// Run the experiment described by the config, writing its output files;
/// the human-readable summary is discarded.
#[no_mangle]
pub unsafe extern "C" fn esfem_run(config: *const EsfemConfig) -> EsfemStatus {
    let Some(config) = config.as_ref() else {
        set_last_error("null config");
        return EsfemStatus::NullPointer;
    };
    match run(&config.0) {
        Ok(_) => EsfemStatus::Ok,
        Err(e) => fail(&e),
    }
}

/// Run the convergence study (example 1) and hand back the table.
#[no_mangle]
pub unsafe extern "C" fn esfem_run_convergence(
    config: *const EsfemConfig,
    out_report: *mut *mut EsfemReport,
) -> EsfemStatus {
    let Some(config) = config.as_ref() else {
        set_last_error("null config");
        return EsfemStatus::NullPointer;
    };
    if out_report.is_null() {
        set_last_error("null report out-pointer");
        return EsfemStatus::NullPointer;
    }
    if config.0.example != 1 {
        set_last_error("esfem_run_convergence requires example = 1");
        return EsfemStatus::InvalidConfig;
    }
    match run_example1(&config.0) {
        Ok(report) => {
            *out_report = Box::into_raw(Box::new(EsfemReport(report)));
            EsfemStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Number of refinement levels in the table.
#[no_mangle]
pub unsafe extern "C" fn esfem_report_len(report: *const EsfemReport) -> size_t {
    report.as_ref().map_or(0, |r| r.0.rows.len())
}

/// Fetch one table row. EOC entries are NaN on the coarsest row.
#[no_mangle]
pub unsafe extern "C" fn esfem_report_row(
    report: *const EsfemReport,
    index: size_t,
    out_h: *mut f64,
    out_linf_l2: *mut f64,
    out_eoc_linf_l2: *mut f64,
    out_l2_h1: *mut f64,
    out_eoc_l2_h1: *mut f64,
) -> EsfemStatus {
    let Some(report) = report.as_ref() else {
        set_last_error("null report");
        return EsfemStatus::NullPointer;
    };
    if index >= report.0.rows.len() {
        set_last_error("row index out of range");
        return EsfemStatus::Error;
    }
    let row = report.0.rows[index];
    let (eoc_l2, eoc_h1) = report.0.eoc_columns()[index];
    for (ptr, value) in [
        (out_h, row.h),
        (out_linf_l2, row.linf_l2),
        (out_eoc_linf_l2, eoc_l2.unwrap_or(f64::NAN)),
        (out_l2_h1, row.l2_h1),
        (out_eoc_l2_h1, eoc_h1.unwrap_or(f64::NAN)),
    ] {
        if !ptr.is_null() {
            *ptr = value;
        }
    }
    EsfemStatus::Ok
}

#[no_mangle]
pub unsafe extern "C" fn esfem_report_free(report: *mut EsfemReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Experimental order of convergence between two refinement levels.
#[no_mangle]
pub unsafe extern "C" fn esfem_eoc(
    e_coarse: f64,
    e_fine: f64,
    h_coarse: f64,
    h_fine: f64,
    out_value: *mut f64,
) -> EsfemStatus {
    if out_value.is_null() {
        set_last_error("null out-pointer");
        return EsfemStatus::NullPointer;
    }
    match eoc(e_coarse, e_fine, h_coarse, h_fine) {
        Ok(v) => {
            *out_value = v;
            EsfemStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Run the verification suite, writing diagnostics.csv into `output_dir`.
/// Returns `ESFEM_STATUS_OK` only if every check passed.
#[no_mangle]
pub unsafe extern "C" fn esfem_verify(output_dir: *const c_char) -> EsfemStatus {
    if output_dir.is_null() {
        set_last_error("null output dir");
        return EsfemStatus::NullPointer;
    }
    let Ok(dir) = CStr::from_ptr(output_dir).to_str() else {
        set_last_error("output dir is not valid UTF-8");
        return EsfemStatus::Error;
    };
    match run_verify(&PathBuf::from(dir)) {
        Ok(checks) => {
            if checks.iter().all(|c| c.passed) {
                EsfemStatus::Ok
            } else {
                let failed: Vec<&str> = checks
                    .iter()
                    .filter(|c| !c.passed)
                    .map(|c| c.name.as_str())
                    .collect();
                set_last_error(&format!("checks failed: {}", failed.join(", ")));
                EsfemStatus::Error
            }
        }
        Err(e) => fail(&e),
    }
}
