//! C ABI over the verification library.
//!
//! Every run function produces an opaque report handle; accessors
//! expose the verdict and render the report as JSON or text into a
//! heap-allocated C string. All strings returned by this library must
//! be released with `spinver_string_free`, and every report with
//! `spinver_report_free`.
//!
//! Status codes mirror the CLI exit codes: 0 pass, 1 verification
//! failure (a report is still produced), 2 usage error (no report).

use libc::c_char;
use spinver::cli::{
    cmd_all, cmd_classify, cmd_clifford, cmd_embed, cmd_lemma_cohomo, cmd_stabilizer, CliError,
    RunOptions,
};
use spinver::report::Report;
use std::ffi::CString;
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Outcome of a call through the C ABI.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SpinverStatus {
    /// The verification ran and passed.
    Ok = 0,
    /// The verification ran and failed; the report explains where.
    VerificationFailed = 1,
    /// Invalid arguments; no report was produced.
    UsageError = 2,
    /// A required pointer was null.
    NullPointer = 3,
    /// Internal failure (a panic was caught at the boundary).
    InternalError = 4,
}

/// Opaque verification report handle.
pub struct SpinverReport {
    inner: Report,
}

fn options(seed: u64, samples: usize) -> RunOptions {
    RunOptions { seed, samples }
}

fn deliver(out: *mut *mut SpinverReport, result: Result<Report, CliError>) -> SpinverStatus {
    if out.is_null() {
        return SpinverStatus::NullPointer;
    }
    match result {
        Ok(report) => {
            let status =
                if report.passed() { SpinverStatus::Ok } else { SpinverStatus::VerificationFailed };
            let boxed = Box::new(SpinverReport { inner: report });
            unsafe { *out = Box::into_raw(boxed) };
            status
        }
        Err(_) => {
            unsafe { *out = std::ptr::null_mut() };
            SpinverStatus::UsageError
        }
    }
}

fn guarded(
    out: *mut *mut SpinverReport,
    body: impl FnOnce() -> Result<Report, CliError>,
) -> SpinverStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(result) => deliver(out, result),
        Err(_) => {
            if !out.is_null() {
                unsafe { *out = std::ptr::null_mut() };
            }
            SpinverStatus::InternalError
        }
    }
}

/// Irreducible-representation table and structural checks for Cl_n
/// (n in 1..=12).
///
/// # Safety
/// `out` must be null or point to writable report-pointer storage.
#[no_mangle]
pub unsafe extern "C" fn spinver_run_clifford(
    n: i64,
    seed: u64,
    samples: usize,
    out: *mut *mut SpinverReport,
) -> SpinverStatus {
    guarded(out, || cmd_clifford(n, &options(seed, samples)))
}

/// Stabilizer solution space for the omega indices in `forms`
/// (each in 1..=6).
///
/// # Safety
/// `forms` must point to `forms_len` readable `u32` values, and `out`
/// must be null or point to writable report-pointer storage.
#[no_mangle]
pub unsafe extern "C" fn spinver_run_stabilizer(
    forms: *const u32,
    forms_len: usize,
    seed: u64,
    samples: usize,
    out: *mut *mut SpinverReport,
) -> SpinverStatus {
    if forms.is_null() && forms_len > 0 {
        return SpinverStatus::NullPointer;
    }
    let slice: Vec<usize> = if forms_len == 0 {
        Vec::new()
    } else {
        std::slice::from_raw_parts(forms, forms_len).iter().map(|&i| i as usize).collect()
    };
    guarded(out, || cmd_stabilizer(&slice, &options(seed, samples)))
}

/// Characteristic-class identities for n in 3..=6. With `typo_weights`
/// set, the n = 6 case uses the repeated-entry weight list and fails.
///
/// # Safety
/// `out` must be null or point to writable report-pointer storage.
#[no_mangle]
pub unsafe extern "C" fn spinver_run_lemma_cohomo(
    n: u32,
    typo_weights: bool,
    seed: u64,
    samples: usize,
    out: *mut *mut SpinverReport,
) -> SpinverStatus {
    guarded(out, || cmd_lemma_cohomo(n, typo_weights, &options(seed, samples)))
}

/// Spin-bundle count for rank `n` with p1 = `p1` x^2; the Euler
/// coefficient applies only when `has_euler` is set (rank 4: of x^2,
/// rank 6: of x^3).
///
/// # Safety
/// `out` must be null or point to writable report-pointer storage.
#[no_mangle]
pub unsafe extern "C" fn spinver_run_classify(
    n: u32,
    p1: i64,
    has_euler: bool,
    euler: i64,
    seed: u64,
    samples: usize,
    out: *mut *mut SpinverReport,
) -> SpinverStatus {
    let euler = has_euler.then_some(euler);
    guarded(out, || cmd_classify(n, p1, euler, &options(seed, samples)))
}

/// The embedding pipeline; with `tamper` set the run selects the
/// non-divisible candidate and reports the failure at step (iii).
///
/// # Safety
/// `out` must be null or point to writable report-pointer storage.
#[no_mangle]
pub unsafe extern "C" fn spinver_run_embed(
    tamper: bool,
    seed: u64,
    samples: usize,
    out: *mut *mut SpinverReport,
) -> SpinverStatus {
    guarded(out, || Ok(cmd_embed(tamper, &options(seed, samples))))
}

/// Every suite in sequence.
///
/// # Safety
/// `out` must be null or point to writable report-pointer storage.
#[no_mangle]
pub unsafe extern "C" fn spinver_run_all(
    typo_weights: bool,
    seed: u64,
    samples: usize,
    out: *mut *mut SpinverReport,
) -> SpinverStatus {
    guarded(out, || Ok(cmd_all(typo_weights, &options(seed, samples))))
}

/// True iff every step of the report passed.
///
/// # Safety
/// `report` must be a live handle from one of the run functions.
#[no_mangle]
pub unsafe extern "C" fn spinver_report_passed(report: *const SpinverReport) -> bool {
    if report.is_null() {
        return false;
    }
    (*report).inner.passed()
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(std::ptr::null_mut(), CString::into_raw)
}

/// Render the report as pretty JSON. Free with `spinver_string_free`.
///
/// # Safety
/// `report` must be a live handle from one of the run functions.
#[no_mangle]
pub unsafe extern "C" fn spinver_report_json(report: *const SpinverReport) -> *mut c_char {
    if report.is_null() {
        return std::ptr::null_mut();
    }
    to_c_string((*report).inner.to_json())
}

/// Render the report as text. Free with `spinver_string_free`.
///
/// # Safety
/// `report` must be a live handle from one of the run functions.
#[no_mangle]
pub unsafe extern "C" fn spinver_report_text(report: *const SpinverReport) -> *mut c_char {
    if report.is_null() {
        return std::ptr::null_mut();
    }
    to_c_string((*report).inner.to_text())
}

/// Release a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must have been returned by `spinver_report_json` or
/// `spinver_report_text` and not freed before.
#[no_mangle]
pub unsafe extern "C" fn spinver_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Release a report handle. Null is a no-op.
///
/// # Safety
/// `report` must have been returned by a run function and not freed
/// before.
#[no_mangle]
pub unsafe extern "C" fn spinver_report_free(report: *mut SpinverReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}
