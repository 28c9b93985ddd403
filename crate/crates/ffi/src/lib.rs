//! C interface to `ntf-core`.
//!
//! Problems cross the boundary as opaque [`NtfProblem`] handles; strings
//! returned to the caller are owned by it and released with
//! [`ntf_string_free`]. Every fallible call returns an [`NtfStatus`]; on
//! failure [`ntf_last_error`] describes the cause.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ntf_core::derivation::{build_dag_partial, verify_structure};
use ntf_core::embedding::embed;
use ntf_core::kripke::{check_model, search_countermodel, write_interpretation, SearchBounds, SearchOutcome};
use ntf_core::logic::problem_logic;
use ntf_core::syntax::{census, check_types, parse_problem, print_problem, resolve_defaults, Problem, TypedProblem};
use ntf_core::szs::SzsStatus;

/// A parsed problem, derivation or interpretation.
pub struct NtfProblem {
    inner: Problem,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NtfStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    LogicError = 4,
    TypeError = 5,
    EmbeddingError = 6,
    ModelError = 7,
    DerivationError = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NtfSzs {
    Theorem = 0,
    CounterSatisfiable = 1,
    Satisfiable = 2,
    Unsatisfiable = 3,
    Unknown = 4,
    GaveUp = 5,
}

impl From<SzsStatus> for NtfSzs {
    fn from(s: SzsStatus) -> Self {
        match s {
            SzsStatus::Theorem => NtfSzs::Theorem,
            SzsStatus::CounterSatisfiable => NtfSzs::CounterSatisfiable,
            SzsStatus::Satisfiable => NtfSzs::Satisfiable,
            SzsStatus::Unsatisfiable => NtfSzs::Unsatisfiable,
            SzsStatus::Unknown => NtfSzs::Unknown,
            SzsStatus::GaveUp => NtfSzs::GaveUp,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NtfCensus {
    pub statements: usize,
    pub type_declarations: usize,
    pub nonclassical_nonindexed: usize,
    pub nonclassical_indexed: usize,
    pub equalities: usize,
    pub quantifiers: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

type Failure = (NtfStatus, String);

/// Runs `body`, recording any failure or panic as the thread's last error.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> NtfStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => NtfStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            NtfStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err((NtfStatus::NullArgument, "null string".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|e| (NtfStatus::InvalidUtf8, e.to_string()))
}

unsafe fn problem<'a>(p: *const NtfProblem) -> Result<&'a Problem, Failure> {
    p.as_ref().map(|p| &p.inner).ok_or((NtfStatus::NullArgument, "null problem".into()))
}

fn out_ptr<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err((NtfStatus::NullArgument, "null output pointer".into()))
    } else {
        Ok(())
    }
}

fn owned(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

fn typed(p: &Problem) -> Result<TypedProblem, Failure> {
    let tp = resolve_defaults(p).map_err(|e| (NtfStatus::TypeError, e.to_string()))?;
    match check_types(&tp).first() {
        Some(issue) => Err((NtfStatus::TypeError, issue.to_string())),
        None => Ok(tp),
    }
}

/// The message of the last failed call on this thread, or null. Valid until
/// the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn ntf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ntf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses TPTP text. Include directives are recorded but not resolved.
///
/// # Safety
/// `source` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ntf_problem_parse(source: *const c_char, out: *mut *mut NtfProblem) -> NtfStatus {
    guard(|| {
        out_ptr(out)?;
        let inner = parse_problem(text(source)?).map_err(|e| (NtfStatus::ParseError, e.to_string()))?;
        *out = Box::into_raw(Box::new(NtfProblem { inner }));
        Ok(())
    })
}

/// Releases a problem. Null is ignored.
///
/// # Safety
/// `p` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ntf_problem_free(p: *mut NtfProblem) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ntf_problem_census(p: *const NtfProblem, out: *mut NtfCensus) -> NtfStatus {
    guard(|| {
        out_ptr(out)?;
        let st = census(problem(p)?);
        *out = NtfCensus {
            statements: st.formulas,
            type_declarations: st.type_declarations,
            nonclassical_nonindexed: st.nonclassical_nonindexed,
            nonclassical_indexed: st.nonclassical_indexed,
            equalities: st.equalities,
            quantifiers: st.quantifiers,
        };
        Ok(())
    })
}

/// Renders the problem as TPTP text.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ntf_problem_print(p: *const NtfProblem, out: *mut *mut c_char) -> NtfStatus {
    guard(|| {
        out_ptr(out)?;
        *out = owned(print_problem(problem(p)?));
        Ok(())
    })
}

/// Normalises the logic specification and renders it.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ntf_problem_check_spec(p: *const NtfProblem, out: *mut *mut c_char) -> NtfStatus {
    guard(|| {
        out_ptr(out)?;
        let logic = problem_logic(problem(p)?).map_err(|e| (NtfStatus::LogicError, e.to_string()))?;
        *out = owned(logic.to_string());
        Ok(())
    })
}

/// Embeds a modal problem into classical typed first-order logic.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ntf_problem_embed(p: *const NtfProblem, out: *mut *mut NtfProblem) -> NtfStatus {
    guard(|| {
        out_ptr(out)?;
        let p = problem(p)?;
        let logic = problem_logic(p).map_err(|e| (NtfStatus::LogicError, e.to_string()))?;
        let emb = embed(&typed(p)?, &logic).map_err(|e| (NtfStatus::EmbeddingError, e.to_string()))?;
        *out = Box::into_raw(Box::new(NtfProblem { inner: emb.problem }));
        Ok(())
    })
}

/// Searches for a finite countermodel. `budget` of zero selects the
/// default. On success `szs` holds the outcome and, when a model was found,
/// `model_out` (if non-null) receives it as a Kripke interpretation;
/// otherwise it is set to null.
///
/// # Safety
/// `p` must be a live handle; `szs` must be writable; `model_out` must be
/// null or writable.
#[no_mangle]
pub unsafe extern "C" fn ntf_problem_find_countermodel(
    p: *const NtfProblem,
    max_worlds: usize,
    max_elems: usize,
    budget: u64,
    szs: *mut NtfSzs,
    model_out: *mut *mut c_char,
) -> NtfStatus {
    guard(|| {
        out_ptr(szs)?;
        if !model_out.is_null() {
            *model_out = ptr::null_mut();
        }
        let p = problem(p)?;
        let logic = problem_logic(p).map_err(|e| (NtfStatus::LogicError, e.to_string()))?;
        let tp = typed(p)?;
        let mut bounds = SearchBounds::new(max_worlds, max_elems);
        if budget > 0 {
            bounds = bounds.with_budget(budget);
        }
        let (outcome, _) = search_countermodel(&tp, &logic, &bounds).map_err(|e| (NtfStatus::ModelError, e.to_string()))?;
        *szs = match outcome {
            SearchOutcome::Found(m) => {
                let verdict = check_model(&m, &tp, &logic).map_err(|e| (NtfStatus::ModelError, e.to_string()))?;
                if !model_out.is_null() {
                    let taken = tp.signature.symbols.keys().chain(&tp.signature.sorts).cloned().collect();
                    *model_out = owned(print_problem(&write_interpretation(&m, "countermodel", &taken)));
                }
                verdict.szs().into()
            }
            SearchOutcome::NotFound => NtfSzs::Unknown,
            SearchOutcome::BudgetExhausted => NtfSzs::GaveUp,
        };
        Ok(())
    })
}

/// Checks acyclicity, completeness and, when `original` is non-null, leaf
/// origin of a derivation. `passed` receives 1 or 0; `report` (if non-null)
/// receives the rendered report.
///
/// # Safety
/// `derivation` must be a live handle; `original` must be null or a live
/// handle; `passed` must be writable; `report` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn ntf_derivation_verify(
    derivation: *const NtfProblem,
    original: *const NtfProblem,
    passed: *mut i32,
    report: *mut *mut c_char,
) -> NtfStatus {
    guard(|| {
        out_ptr(passed)?;
        let d = build_dag_partial(problem(derivation)?).map_err(|e| (NtfStatus::DerivationError, e.to_string()))?;
        let tp = if original.is_null() {
            None
        } else {
            Some(resolve_defaults(problem(original)?).map_err(|e| (NtfStatus::TypeError, e.to_string()))?)
        };
        let r = verify_structure(&d, tp.as_ref());
        *passed = i32::from(r.passed());
        if !report.is_null() {
            *report = owned(r.to_string());
        }
        Ok(())
    })
}
