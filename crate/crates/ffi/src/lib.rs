//! C ABI for running documents and property suites.
//!
//! Objects cross the boundary as opaque handles. Every entry point returns a
//! [`PlStatus`]; on error a message is available from
//! [`pl_last_error_message`] on the calling thread. Strings handed out by the
//! library must be released with [`pl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use plectic_core::cli::{parse, run, Document};
use plectic_core::report::Report;
use plectic_core::suites::{run_suite, SuiteConfig};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlStatus {
    /// Success; for runs, every check passed.
    Ok = 0,
    /// The run completed and at least one check failed.
    Fail = 1,
    /// The document did not parse.
    ParseError = 2,
    /// A required pointer argument was null.
    NullArgument = 3,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 4,
    /// The suite name is not known.
    UnknownSuite = 5,
    /// An internal panic was caught at the boundary.
    Internal = 6,
}

/// A parsed document.
pub struct PlDocument {
    doc: Document,
}

/// The checks produced by a run or suite, in order.
pub struct PlReport {
    report: Report,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn guard(f: impl FnOnce() -> PlStatus) -> PlStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "internal error".into());
            set_error(msg);
            PlStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, PlStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(PlStatus::NullArgument);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        PlStatus::InvalidUtf8
    })
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul removed").into_raw()
}

fn report_status(r: &Report) -> PlStatus {
    if r.passed() {
        PlStatus::Ok
    } else {
        PlStatus::Fail
    }
}

/// Parses `source` (UTF-8, nul-terminated) into `*out`.
///
/// # Safety
/// `source` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pl_document_parse(source: *const c_char, out: *mut *mut PlDocument) -> PlStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return PlStatus::NullArgument;
        }
        *out = ptr::null_mut();
        let src = match read_str(source) {
            Ok(s) => s,
            Err(s) => return s,
        };
        match parse(src) {
            Ok(doc) => {
                *out = Box::into_raw(Box::new(PlDocument { doc }));
                PlStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                PlStatus::ParseError
            }
        }
    })
}

/// Releases a document; null is ignored.
///
/// # Safety
/// `doc` must come from [`pl_document_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pl_document_free(doc: *mut PlDocument) {
    if !doc.is_null() {
        drop(Box::from_raw(doc));
    }
}

/// Writes the canonical source of `doc` to `*out`.
///
/// # Safety
/// `doc` must be a live document and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pl_document_to_source(doc: *const PlDocument, out: *mut *mut c_char) -> PlStatus {
    guard(|| {
        if doc.is_null() || out.is_null() {
            set_error("null argument");
            return PlStatus::NullArgument;
        }
        *out = into_c_string((*doc).doc.to_source());
        PlStatus::Ok
    })
}

/// Runs every command of `doc` with `jobs` worker threads (0 = all cores).
/// `*out` receives the report whether or not checks failed.
///
/// # Safety
/// `doc` must be a live document and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pl_document_run(doc: *const PlDocument, jobs: usize, out: *mut *mut PlReport) -> PlStatus {
    guard(|| {
        if doc.is_null() || out.is_null() {
            set_error("null argument");
            return PlStatus::NullArgument;
        }
        *out = ptr::null_mut();
        let report = run(&(*doc).doc, jobs);
        let status = report_status(&report);
        *out = Box::into_raw(Box::new(PlReport { report }));
        status
    })
}

/// Runs a named property suite.
///
/// # Safety
/// `name` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pl_suite_run(
    name: *const c_char,
    seed: u64,
    count: usize,
    max_degree: u32,
    out: *mut *mut PlReport,
) -> PlStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return PlStatus::NullArgument;
        }
        *out = ptr::null_mut();
        let name = match read_str(name) {
            Ok(s) => s,
            Err(s) => return s,
        };
        let cfg = SuiteConfig {
            seed,
            count,
            max_degree,
        };
        match run_suite(name, &cfg) {
            Some(report) => {
                let status = report_status(&report);
                *out = Box::into_raw(Box::new(PlReport { report }));
                status
            }
            None => {
                set_error(format!("unknown suite `{name}`"));
                PlStatus::UnknownSuite
            }
        }
    })
}

/// 1 if every check passed, 0 otherwise (also for null).
///
/// # Safety
/// `report` must be null or a live report.
#[no_mangle]
pub unsafe extern "C" fn pl_report_passed(report: *const PlReport) -> i32 {
    report.as_ref().map_or(0, |r| i32::from(r.report.passed()))
}

/// Number of checks.
///
/// # Safety
/// `report` must be null or a live report.
#[no_mangle]
pub unsafe extern "C" fn pl_report_len(report: *const PlReport) -> usize {
    report.as_ref().map_or(0, |r| r.report.len())
}

/// Number of failed checks.
///
/// # Safety
/// `report` must be null or a live report.
#[no_mangle]
pub unsafe extern "C" fn pl_report_failures(report: *const PlReport) -> usize {
    report.as_ref().map_or(0, |r| r.report.failures().count())
}

/// Writes the tab-separated machine text to `*out`.
///
/// # Safety
/// `report` must be a live report and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pl_report_machine_text(report: *const PlReport, out: *mut *mut c_char) -> PlStatus {
    guard(|| {
        if report.is_null() || out.is_null() {
            set_error("null argument");
            return PlStatus::NullArgument;
        }
        *out = into_c_string((*report).report.machine_text());
        PlStatus::Ok
    })
}

/// Writes the human-readable text to `*out`.
///
/// # Safety
/// `report` must be a live report and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pl_report_human_text(report: *const PlReport, out: *mut *mut c_char) -> PlStatus {
    guard(|| {
        if report.is_null() || out.is_null() {
            set_error("null argument");
            return PlStatus::NullArgument;
        }
        *out = into_c_string((*report).report.human_text());
        PlStatus::Ok
    })
}

/// Releases a report; null is ignored.
///
/// # Safety
/// `report` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pl_report_free(report: *mut PlReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last error on this thread, or null. Valid until the next
/// call into the library from the same thread.
#[no_mangle]
pub extern "C" fn pl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static C string.
#[no_mangle]
pub extern "C" fn pl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
