//! C ABI over `polyindex`.
//!
//! Objects are opaque handles created by `*_parse` / `*_build` functions and
//! released with the matching `*_free`. Every fallible call returns a
//! [`PolyindexStatus`]; on failure [`polyindex_last_error`] describes it.
//! Strings returned through `char **` are owned by the caller and released
//! with [`polyindex_string_free`]. Indices in reports are 1-based.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use polyindex::correspondence::{
    build_polymatroid, check_condition_a, check_condition_b, check_condition_c, extract_code,
    RepresentedProblem,
};
use polyindex::indexcode::{
    brute_force_verify, verify_differential_ecic, IndexCode, IndexCodingProblem, Verdict,
};
use polyindex::io::{
    format_matrix, format_polymatroid, parse_matrix, parse_polymatroid, parse_problem, Polymatroid,
};
use polyindex::{Budget, Error};

/// Return codes. The first four match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyindexStatus {
    Ok = 0,
    Negative = 1,
    InputError = 2,
    BudgetExceeded = 3,
    NullArgument = 4,
    Internal = 5,
}

/// An index coding problem.
pub struct PolyindexProblem(IndexCodingProblem);

/// A code matrix bound to its problem.
pub struct PolyindexCode(IndexCode);

/// A problem with a representable polymatroid on `m + 2c` elements.
pub struct PolyindexInstance(RepresentedProblem);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = msg);
}

fn status_of(e: &Error) -> PolyindexStatus {
    match e {
        Error::BudgetExceeded { .. } | Error::CapExceeded { .. } => PolyindexStatus::BudgetExceeded,
        Error::ConditionViolated { .. } => PolyindexStatus::Negative,
        _ => PolyindexStatus::InputError,
    }
}

fn fail(e: Error) -> PolyindexStatus {
    set_error(e.to_string());
    status_of(&e)
}

fn guard(f: impl FnOnce() -> PolyindexStatus) -> PolyindexStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            PolyindexStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, PolyindexStatus> {
    if p.is_null() {
        set_error(format!("{what} is null"));
        return Err(PolyindexStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("{what} is not valid UTF-8"));
        PolyindexStatus::InputError
    })
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, PolyindexStatus> {
    p.as_ref().ok_or_else(|| {
        set_error(format!("{what} is null"));
        PolyindexStatus::NullArgument
    })
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> PolyindexStatus {
    if out.is_null() {
        set_error("output pointer is null");
        return PolyindexStatus::NullArgument;
    }
    *out = Box::into_raw(Box::new(value));
    PolyindexStatus::Ok
}

/// Writes `s` to `out` when `out` is non-null.
unsafe fn put_string(out: *mut *mut c_char, s: String) {
    if !out.is_null() {
        *out = CString::new(s).expect("reports contain no nul").into_raw();
    }
}

fn verdict_report(v: &Verdict) -> String {
    match v {
        Verdict::Valid => r#"{"verdict":"valid"}"#.to_owned(),
        Verdict::Invalid(w) => {
            let pattern: Vec<String> = w.pattern.one_based().iter().map(usize::to_string).collect();
            format!(
                r#"{{"verdict":"invalid","witness":{{"receiver":{},"pattern":[{}]}}}}"#,
                w.receiver + 1,
                pattern.join(",")
            )
        }
    }
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn polyindex_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn polyindex_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a problem from its JSON form.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn polyindex_problem_parse(
    json: *const c_char,
    out: *mut *mut PolyindexProblem,
) -> PolyindexStatus {
    guard(|| {
        let json = tri!(text(json, "json"));
        match parse_problem(json) {
            Ok(p) => put(out, PolyindexProblem(p)),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `p` must come from [`polyindex_problem_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn polyindex_problem_free(p: *mut PolyindexProblem) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Parses a code matrix in the `rows cols q` text format for `problem`.
///
/// # Safety
/// `problem` must be a live handle, `matrix` a nul-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn polyindex_code_parse(
    problem: *const PolyindexProblem,
    matrix: *const c_char,
    out: *mut *mut PolyindexCode,
) -> PolyindexStatus {
    guard(|| {
        let problem = tri!(handle(problem, "problem"));
        let matrix = tri!(text(matrix, "matrix"));
        match parse_matrix(matrix).and_then(|l| IndexCode::new(problem.0.clone(), l)) {
            Ok(c) => put(out, PolyindexCode(c)),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `c` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn polyindex_code_free(c: *mut PolyindexCode) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Code length `c`, or 0 for a null handle.
///
/// # Safety
/// `code` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn polyindex_code_length(code: *const PolyindexCode) -> usize {
    code.as_ref().map_or(0, |c| c.0.len())
}

/// The code matrix in text form.
///
/// # Safety
/// `code` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn polyindex_code_to_text(
    code: *const PolyindexCode,
    out: *mut *mut c_char,
) -> PolyindexStatus {
    guard(|| {
        let code = tri!(handle(code, "code"));
        if out.is_null() {
            set_error("output pointer is null");
            return PolyindexStatus::NullArgument;
        }
        put_string(out, format_matrix(code.0.matrix()));
        PolyindexStatus::Ok
    })
}

/// Span-test verification. Returns `Ok` for a valid code and `Negative`
/// otherwise; `report` (nullable) receives the verdict JSON.
///
/// # Safety
/// `code` must be a live handle; `report` null or writable.
#[no_mangle]
pub unsafe extern "C" fn polyindex_verify(
    code: *const PolyindexCode,
    report: *mut *mut c_char,
) -> PolyindexStatus {
    guard(|| {
        let code = tri!(handle(code, "code"));
        let v = verify_differential_ecic(&code.0);
        put_string(report, verdict_report(&v));
        if v.is_valid() {
            PolyindexStatus::Ok
        } else {
            PolyindexStatus::Negative
        }
    })
}

/// Exhaustive verification under `budget` steps (0 selects the default).
///
/// # Safety
/// `code` must be a live handle; `report` null or writable.
#[no_mangle]
pub unsafe extern "C" fn polyindex_brute_verify(
    code: *const PolyindexCode,
    budget: u64,
    report: *mut *mut c_char,
) -> PolyindexStatus {
    guard(|| {
        let code = tri!(handle(code, "code"));
        let budget = if budget == 0 {
            Budget::DEFAULT
        } else {
            Budget(budget)
        };
        match brute_force_verify(&code.0, budget) {
            Ok(v) => {
                put_string(report, verdict_report(&v));
                if v.is_valid() {
                    PolyindexStatus::Ok
                } else {
                    PolyindexStatus::Negative
                }
            }
            Err(e) => fail(e),
        }
    })
}

/// Builds the code's representable polymatroid.
///
/// # Safety
/// `code` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn polyindex_build_polymatroid(
    code: *const PolyindexCode,
    out: *mut *mut PolyindexInstance,
) -> PolyindexStatus {
    guard(|| {
        let code = tri!(handle(code, "code"));
        put(out, PolyindexInstance(build_polymatroid(&code.0)))
    })
}

/// Pairs `problem` with a representation given as polymatroid JSON.
///
/// # Safety
/// `problem` must be a live handle, `json` a nul-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn polyindex_instance_parse(
    problem: *const PolyindexProblem,
    json: *const c_char,
    out: *mut *mut PolyindexInstance,
) -> PolyindexStatus {
    guard(|| {
        let problem = tri!(handle(problem, "problem"));
        let json = tri!(text(json, "json"));
        let repr = match parse_polymatroid(json) {
            Ok(Polymatroid::Repr(r)) => r,
            Ok(Polymatroid::Table(_)) => {
                set_error("a representation is required");
                return PolyindexStatus::InputError;
            }
            Err(e) => return fail(e),
        };
        match RepresentedProblem::new(problem.0.clone(), repr) {
            Ok(i) => put(out, PolyindexInstance(i)),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `inst` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn polyindex_instance_free(inst: *mut PolyindexInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// The representation as polymatroid JSON.
///
/// # Safety
/// `inst` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn polyindex_instance_to_json(
    inst: *const PolyindexInstance,
    out: *mut *mut c_char,
) -> PolyindexStatus {
    guard(|| {
        let inst = tri!(handle(inst, "instance"));
        if out.is_null() {
            set_error("output pointer is null");
            return PolyindexStatus::NullArgument;
        }
        put_string(
            out,
            format_polymatroid(&Polymatroid::Repr(inst.0.repr().clone())),
        );
        PolyindexStatus::Ok
    })
}

/// Evaluates conditions (A), (B), (C). Each non-null flag receives 1 when
/// its condition holds and 0 otherwise. Returns `Ok` when all three hold.
///
/// # Safety
/// `inst` must be a live handle; flags null or writable.
#[no_mangle]
pub unsafe extern "C" fn polyindex_check_conditions(
    inst: *const PolyindexInstance,
    a: *mut i32,
    b: *mut i32,
    c: *mut i32,
) -> PolyindexStatus {
    guard(|| {
        let inst = tri!(handle(inst, "instance"));
        let results = [
            check_condition_a(&inst.0),
            check_condition_b(&inst.0),
            check_condition_c(&inst.0).is_valid(),
        ];
        for (flag, ok) in [a, b, c].into_iter().zip(results) {
            if !flag.is_null() {
                *flag = ok as i32;
            }
        }
        if results.iter().all(|&x| x) {
            PolyindexStatus::Ok
        } else {
            PolyindexStatus::Negative
        }
    })
}

/// Extracts a code matrix; fails with `Negative` when (A) or (B) is violated.
///
/// # Safety
/// `inst` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn polyindex_extract_code(
    inst: *const PolyindexInstance,
    out: *mut *mut PolyindexCode,
) -> PolyindexStatus {
    guard(|| {
        let inst = tri!(handle(inst, "instance"));
        match extract_code(&inst.0) {
            Ok(code) => put(out, PolyindexCode(code)),
            Err(e) => fail(e),
        }
    })
}
