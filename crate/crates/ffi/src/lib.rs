//! C ABI for the descoord library.
//!
//! Generators and synthesis reports cross the boundary as opaque handles
//! owned by the caller and released with the matching `*_free` function.
//! Every fallible call returns a [`DcStatus`]; on failure the message is
//! available from [`dc_last_error_message`] until the next call on the same
//! thread. Strings returned through out-parameters are released with
//! [`dc_string_free`].
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use descoord::automata::{language_equal, project_onto, sync_product, trim, Generator};
use descoord::coordination::{parse_event_set, synthesize, CoordinationProblem, Observation, SynthesisReport};
use descoord::io::{parse_generator, report_to_json, serialize_generator};
use descoord::props::is_controllable;
use descoord::synthesis::{sup_c, sup_cn, SynthesisInput};
use descoord::Error;

/// Opaque generator handle.
pub struct DcGenerator(Generator);

/// Opaque synthesis report handle.
pub struct DcReport(SynthesisReport);

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Validation = 4,
    AlphabetMismatch = 5,
    UnknownEvent = 6,
    PreconditionViolated = 7,
    AlphabetConstraint = 8,
    NotDecomposable = 9,
    Conflicting = 10,
    FixpointNotReached = 11,
    Internal = 12,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> DcStatus {
    match e {
        Error::Parse { .. } => DcStatus::Parse,
        Error::Validation(_) | Error::AttributeConflict { .. } => DcStatus::Validation,
        Error::AlphabetMismatch(_) => DcStatus::AlphabetMismatch,
        Error::UnknownEvent(_) => DcStatus::UnknownEvent,
        Error::PreconditionViolated(_) | Error::MissingProjection => DcStatus::PreconditionViolated,
        Error::AlphabetConstraintViolated(_) => DcStatus::AlphabetConstraint,
        Error::NotConditionallyDecomposable { .. } => DcStatus::NotDecomposable,
        Error::NonconflictCheckFailed(_) => DcStatus::Conflicting,
        Error::FixpointNotReached(_) => DcStatus::FixpointNotReached,
        #[allow(unreachable_patterns)]
        _ => DcStatus::Internal,
    }
}

fn fail(status: DcStatus, msg: impl Into<String>) -> DcStatus {
    set_error(msg.into());
    status
}

/// Runs `f`, converting library errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), DcStatus>) -> DcStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(f)) {
        Ok(Ok(())) => DcStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(DcStatus::Internal, "internal panic"),
    }
}

fn lib<T>(r: descoord::Result<T>) -> Result<T, DcStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, DcStatus> {
    if p.is_null() {
        return Err(fail(DcStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(DcStatus::InvalidUtf8, "string argument is not UTF-8"))
}

unsafe fn gen_arg<'a>(p: *const DcGenerator) -> Result<&'a Generator, DcStatus> {
    p.as_ref().map(|g| &g.0).ok_or_else(|| fail(DcStatus::NullPointer, "null generator handle"))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), DcStatus> {
    if out.is_null() {
        return Err(fail(DcStatus::NullPointer, "null out-parameter"));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_gen(out: *mut *mut DcGenerator, g: Generator) -> Result<(), DcStatus> {
    put(out, Box::into_raw(Box::new(DcGenerator(g))))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), DcStatus> {
    let c = CString::new(s).map_err(|_| fail(DcStatus::Internal, "output contains a nul byte"))?;
    put(out, c.into_raw())
}

/// Message describing the last failure on this thread, or null. The pointer
/// stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn dc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub unsafe extern "C" fn dc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a generator in the text format.
#[no_mangle]
pub unsafe extern "C" fn dc_generator_parse(text: *const c_char, out: *mut *mut DcGenerator) -> DcStatus {
    guard(|| {
        let g = lib(parse_generator(str_arg(text)?))?;
        put_gen(out, g)
    })
}

/// Renders a generator in the text format.
#[no_mangle]
pub unsafe extern "C" fn dc_generator_serialize(g: *const DcGenerator, out: *mut *mut c_char) -> DcStatus {
    guard(|| put_string(out, serialize_generator(gen_arg(g)?)))
}

#[no_mangle]
pub unsafe extern "C" fn dc_generator_free(g: *mut DcGenerator) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of states, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn dc_generator_num_states(g: *const DcGenerator) -> usize {
    g.as_ref().map_or(0, |g| g.0.num_states())
}

#[no_mangle]
pub unsafe extern "C" fn dc_sync_product(
    a: *const DcGenerator,
    b: *const DcGenerator,
    out: *mut *mut DcGenerator,
) -> DcStatus {
    guard(|| put_gen(out, lib(sync_product(gen_arg(a)?, gen_arg(b)?))?))
}

/// Natural projection onto the comma separated `events`.
#[no_mangle]
pub unsafe extern "C" fn dc_project(
    g: *const DcGenerator,
    events: *const c_char,
    out: *mut *mut DcGenerator,
) -> DcStatus {
    guard(|| {
        let g = gen_arg(g)?;
        let set = parse_event_set(str_arg(events)?);
        lib(g.alphabet().check_known(&set))?;
        put_gen(out, project_onto(g, &set))
    })
}

#[no_mangle]
pub unsafe extern "C" fn dc_trim(g: *const DcGenerator, out: *mut *mut DcGenerator) -> DcStatus {
    guard(|| put_gen(out, trim(gen_arg(g)?)))
}

/// Writes whether both the marked and the generated languages coincide.
#[no_mangle]
pub unsafe extern "C" fn dc_language_equal(a: *const DcGenerator, b: *const DcGenerator, out: *mut bool) -> DcStatus {
    guard(|| put(out, lib(language_equal(gen_arg(a)?, gen_arg(b)?))?.both()))
}

#[no_mangle]
pub unsafe extern "C" fn dc_is_controllable(
    spec: *const DcGenerator,
    plant: *const DcGenerator,
    out: *mut bool,
) -> DcStatus {
    guard(|| put(out, lib(is_controllable(gen_arg(spec)?, gen_arg(plant)?))?.holds))
}

/// Supremal controllable sublanguage of `spec` w.r.t. `plant`.
#[no_mangle]
pub unsafe extern "C" fn dc_sup_c(
    spec: *const DcGenerator,
    plant: *const DcGenerator,
    out: *mut *mut DcGenerator,
) -> DcStatus {
    guard(|| {
        let input = SynthesisInput::new(gen_arg(spec)?.clone(), gen_arg(plant)?.clone());
        put_gen(out, lib(sup_c(&input))?)
    })
}

/// Supremal controllable and normal sublanguage; the observed events are
/// those flagged observable in the plant alphabet.
#[no_mangle]
pub unsafe extern "C" fn dc_sup_cn(
    spec: *const DcGenerator,
    plant: *const DcGenerator,
    out: *mut *mut DcGenerator,
) -> DcStatus {
    guard(|| {
        let input = SynthesisInput::new(gen_arg(spec)?.clone(), gen_arg(plant)?.clone()).observed();
        put_gen(out, lib(sup_cn(&input))?)
    })
}

/// Coordinated synthesis for two subsystems. `sigma_k` is a comma separated
/// coordinator alphabet; `partial` hides events flagged unobservable.
#[no_mangle]
pub unsafe extern "C" fn dc_synthesize(
    g1: *const DcGenerator,
    g2: *const DcGenerator,
    spec: *const DcGenerator,
    sigma_k: *const c_char,
    partial: bool,
    out: *mut *mut DcReport,
) -> DcStatus {
    guard(|| {
        let observation = if partial { Observation::Partial } else { Observation::Full };
        let sk = parse_event_set(str_arg(sigma_k)?);
        let prob = lib(CoordinationProblem::new(
            gen_arg(g1)?.clone(),
            gen_arg(g2)?.clone(),
            gen_arg(spec)?.clone(),
            sk,
            observation,
        ))?;
        let report = lib(synthesize(&prob))?;
        put(out, Box::into_raw(Box::new(DcReport(report))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn dc_report_free(r: *mut DcReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Copies the synthesized generator out of the report; fails with
/// `Conflicting` when the supervisors conflict.
#[no_mangle]
pub unsafe extern "C" fn dc_report_result(r: *const DcReport, out: *mut *mut DcGenerator) -> DcStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| fail(DcStatus::NullPointer, "null report handle"))?;
        put_gen(out, lib(r.0.final_language())?.clone())
    })
}

/// Whether the result is the supremal conditionally controllable
/// sublanguage; false for a null handle.
#[no_mangle]
pub unsafe extern "C" fn dc_report_is_supremal(r: *const DcReport) -> bool {
    r.as_ref().is_some_and(|r| r.0.supremal)
}

#[no_mangle]
pub unsafe extern "C" fn dc_report_to_json(r: *const DcReport, out: *mut *mut c_char) -> DcStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| fail(DcStatus::NullPointer, "null report handle"))?;
        put_string(out, report_to_json(&r.0))
    })
}
