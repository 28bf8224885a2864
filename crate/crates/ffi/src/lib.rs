//! C ABI over the `infodist` library.
//!
//! Networks and verdicts cross the boundary as opaque handles released by
//! the matching `*_free`. Every fallible call
//! returns an [`InfodistStatus`]; the message of the last failure on the
//! calling thread is available from [`infodist_last_error`]. Strings returned
//! through `char **` out-parameters are owned by the caller and must be
//! released with [`infodist_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use infodist::graph::{min_cut, validate_network, Network, RawNetwork};
use infodist::rate::{check_rate_feasible, format_ratio, parse_ratio_list, RateVector};
use infodist::reduction::{
    decide_index_rawness, index_to_network, reduce_deadline, DeadlineInstance, DeadlineJson, IndexCodingInstance,
    IndexJson,
};
use infodist::witness::{decide_information_distributive, Budget, Reading, SearchConfig, Status, Verdict};
use infodist::Error;
use serde_json::json;

/// Outcome of a call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InfodistStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidNetwork = 4,
    InvalidArgument = 5,
    Panic = 6,
}

/// Verdict of the information-distributive decision.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InfodistDecision {
    Yes = 0,
    No = 10,
    Unknown = 20,
}

/// A validated network.
pub struct InfodistNetwork(Network);

/// Result of [`infodist_check`].
pub struct InfodistVerdict(Verdict);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(err: &Error) -> InfodistStatus {
    match err {
        Error::UnknownNode(_)
        | Error::DuplicateNode(_)
        | Error::DuplicateEdge { .. }
        | Error::CycleDetected { .. }
        | Error::SourceHasInEdge { .. }
        | Error::SinkHasOutEdge { .. }
        | Error::DegenerateSession { .. } => InfodistStatus::InvalidNetwork,
        _ => InfodistStatus::InvalidArgument,
    }
}

struct Failure(InfodistStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure(InfodistStatus::ParseError, e.to_string())
    }
}

/// Runs `body`, recording any failure or panic as the last error.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> InfodistStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => InfodistStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            InfodistStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(InfodistStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(InfodistStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| Failure(InfodistStatus::NullPointer, "null output pointer".into()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(InfodistStatus::NullPointer, "null handle".into()))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn infodist_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn infodist_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn infodist_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates a network from its JSON description.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out_network` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn infodist_network_from_json(
    json: *const c_char,
    out_network: *mut *mut InfodistNetwork,
) -> InfodistStatus {
    guard(|| {
        let slot = out(out_network)?;
        let raw: RawNetwork = serde_json::from_str(text(json)?)?;
        let net = validate_network(&raw)?;
        *slot = Box::into_raw(Box::new(InfodistNetwork(net)));
        Ok(())
    })
}

/// Releases a network handle.
///
/// # Safety
/// `network` must be null or a handle from [`infodist_network_from_json`].
#[no_mangle]
pub unsafe extern "C" fn infodist_network_free(network: *mut InfodistNetwork) {
    if !network.is_null() {
        drop(Box::from_raw(network));
    }
}

/// Number of edges, or 0 for a null handle.
///
/// # Safety
/// `network` must be null or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn infodist_network_edge_count(network: *const InfodistNetwork) -> usize {
    network.as_ref().map_or(0, |n| n.0.edge_count())
}

/// Number of sessions, or 0 for a null handle.
///
/// # Safety
/// `network` must be null or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn infodist_network_session_count(network: *const InfodistNetwork) -> usize {
    network.as_ref().map_or(0, |n| n.0.session_count())
}

/// Minimum cut value of session `session` (0-based).
///
/// # Safety
/// `network` must be a valid handle and `out_value` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn infodist_min_cut(
    network: *const InfodistNetwork,
    session: usize,
    out_value: *mut usize,
) -> InfodistStatus {
    guard(|| {
        let net = &handle(network)?.0;
        let slot = out(out_value)?;
        if session >= net.session_count() {
            return Err(Error::UnknownSession(session + 1).into());
        }
        let s = net.session(session);
        *slot = min_cut(net, s.source, s.sink).value;
        Ok(())
    })
}

/// Decides whether the network is information-distributive.
/// `max_candidates` of 0 selects the default budget; a nonzero `strict`
/// selects the stricter reading of the prefix bound.
///
/// # Safety
/// `network` must be a valid handle and `out_verdict` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn infodist_check(
    network: *const InfodistNetwork,
    max_candidates: u64,
    strict: i32,
    out_verdict: *mut *mut InfodistVerdict,
) -> InfodistStatus {
    guard(|| {
        let net = &handle(network)?.0;
        let slot = out(out_verdict)?;
        let mut cfg = SearchConfig::default();
        if max_candidates > 0 {
            cfg.budget = Budget { max_candidates, max_seconds: None };
        }
        if strict != 0 {
            cfg.reading = Reading::Strict;
        }
        let v = decide_information_distributive(net, &cfg);
        *slot = Box::into_raw(Box::new(InfodistVerdict(v)));
        Ok(())
    })
}

/// Decision carried by a verdict; `Unknown` for a null handle.
///
/// # Safety
/// `verdict` must be null or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn infodist_verdict_decision(verdict: *const InfodistVerdict) -> InfodistDecision {
    match verdict.as_ref().map(|v| v.0.status) {
        Some(Status::Yes) => InfodistDecision::Yes,
        Some(Status::No) => InfodistDecision::No,
        _ => InfodistDecision::Unknown,
    }
}

/// Verdict as JSON: status, witness (if any) and search statistics.
///
/// # Safety
/// `verdict` must be a valid handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn infodist_verdict_to_json(
    verdict: *const InfodistVerdict,
    out_json: *mut *mut c_char,
) -> InfodistStatus {
    guard(|| {
        let v = &handle(verdict)?.0;
        let slot = out(out_json)?;
        let doc = json!({
            "status": v.status,
            "witness": v.witness.as_ref().map(|w| w.to_json()),
            "stats": v.stats,
        });
        *slot = owned_string(doc.to_string());
        Ok(())
    })
}

/// Releases a verdict handle.
///
/// # Safety
/// `verdict` must be null or a handle from [`infodist_check`].
#[no_mangle]
pub unsafe extern "C" fn infodist_verdict_free(verdict: *mut InfodistVerdict) {
    if !verdict.is_null() {
        drop(Box::from_raw(verdict));
    }
}

/// Decides whether comma-separated `rates` (e.g. `"1,1/2"`) are achievable
/// by routing. `out_lambda`, if non-null, receives the optimal scaling as a
/// `p/q` string, or null for the zero vector.
///
/// # Safety
/// `network` must be a valid handle, `rates` a NUL-terminated string,
/// `out_feasible` a valid pointer and `out_lambda` null or valid.
#[no_mangle]
pub unsafe extern "C" fn infodist_rate_feasible(
    network: *const InfodistNetwork,
    rates: *const c_char,
    out_feasible: *mut bool,
    out_lambda: *mut *mut c_char,
) -> InfodistStatus {
    guard(|| {
        let net = &handle(network)?.0;
        let slot = out(out_feasible)?;
        let rates = RateVector::new(parse_ratio_list(text(rates)?)?)?;
        let f = check_rate_feasible(net, &rates)?;
        *slot = f.feasible;
        if let Some(l) = out_lambda.as_mut() {
            *l = f.lambda.as_ref().map_or(ptr::null_mut(), |q| owned_string(format_ratio(q)));
        }
        Ok(())
    })
}

/// Index-coding instance JSON to a report with the generated network,
/// its bottleneck witness, `raw` and `l_min`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn infodist_reduce_index(json: *const c_char, out_json: *mut *mut c_char) -> InfodistStatus {
    guard(|| {
        let slot = out(out_json)?;
        let inst = IndexCodingInstance::from_json(&serde_json::from_str::<IndexJson>(text(json)?)?)?;
        let (net, witness) = index_to_network(&inst);
        let r = decide_index_rawness(&inst);
        let doc = json!({
            "raw": r.raw,
            "l_min": r.l_min,
            "network": net.to_raw(),
            "witness": witness.to_json(),
        });
        *slot = owned_string(doc.to_string());
        Ok(())
    })
}

/// Deadline instance JSON to a report with the time-extended network and
/// the outcome of the shift checks.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn infodist_reduce_deadline(json: *const c_char, out_json: *mut *mut c_char) -> InfodistStatus {
    guard(|| {
        let slot = out(out_json)?;
        let inst = DeadlineInstance::from_json(&serde_json::from_str::<DeadlineJson>(text(json)?)?)?;
        let (tnet, v) = reduce_deadline(&inst)?;
        let doc = json!({
            "status": v.status,
            "c0": v.c0.iter().map(|&e| tnet.label(e)).collect::<Vec<_>>(),
            "checks": v,
            "network": tnet.net.to_raw(),
        });
        *slot = owned_string(doc.to_string());
        Ok(())
    })
}
