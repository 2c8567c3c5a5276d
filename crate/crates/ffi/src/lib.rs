//! C ABI over `irrlab`.
//!
//! Networks live behind an opaque `IrrSystem` handle. Every call returns an
//! `IrrStatus` and writes results through out-pointers; on failure the
//! message is available from `irr_last_error_message` on the same thread.
//! Output states are packed integers with node 0 as the most significant bit.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use irrlab::corpus;
use irrlab::dist::mutual_information;
use irrlab::net::{
    build_transition_map, compose_t_steps, parse_network_spec, parse_transition_table,
    uniform_joint,
};
use irrlab::phi::{self, PhiAnalyzer};
use irrlab::psi;
use irrlab::report::{build_report, render, Format, ReportOptions};
use irrlab::{EiMode, Error, JointDist, TransitionMap};

/// Result code of every `irr_*` call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IrrStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    Null = 1,
    Parse = 2,
    /// The output state has probability zero.
    Unreachable = 3,
    InvalidArg = 4,
    /// The measure is undefined here (infinite divergence, no usable partition).
    Undefined = 5,
    Utf8 = 6,
    /// A Rust panic was caught at the boundary.
    Panic = 7,
}

/// `mode` values for the φ functions.
pub const IRR_MODE_STANDARD: u32 = 0;
pub const IRR_MODE_PERTURBED: u32 = 1;

/// `format` values for `irr_report`.
pub const IRR_FORMAT_MD: u32 = 0;
pub const IRR_FORMAT_CSV: u32 = 1;
pub const IRR_FORMAT_JSON: u32 = 2;

/// A network with its uniform-input joint distribution.
pub struct IrrSystem {
    name: String,
    map: TransitionMap,
    joint: JointDist,
}

impl IrrSystem {
    fn new(name: String, map: TransitionMap) -> Self {
        let joint = uniform_joint(&map);
        IrrSystem { name, map, joint }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let message = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(message).ok());
}

struct Fail(IrrStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } => IrrStatus::Parse,
            Error::UnreachableState { .. } => IrrStatus::Unreachable,
            Error::AbsoluteContinuityViolation { .. } | Error::DegenerateNormalizer => {
                IrrStatus::Undefined
            }
            _ => IrrStatus::InvalidArg,
        };
        Fail(status, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(IrrStatus::Null, format!("{what} is NULL"))
}

/// Runs `f`, records any failure, and turns panics into `IrrStatus::Panic`.
fn guard<F: FnOnce() -> Result<(), Fail>>(f: F) -> IrrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            IrrStatus::Ok
        }
        Ok(Err(Fail(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("panic inside irrlab");
            IrrStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Fail(IrrStatus::Utf8, format!("{what} is not UTF-8: {e}")))
}

unsafe fn system<'a>(p: *const IrrSystem) -> Result<&'a IrrSystem, Fail> {
    p.as_ref().ok_or_else(|| null("system"))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn mode(m: u32) -> Result<EiMode, Fail> {
    match m {
        IRR_MODE_STANDARD => Ok(EiMode::Standard),
        IRR_MODE_PERTURBED => Ok(EiMode::PerturbedWires),
        _ => Err(Fail(IrrStatus::InvalidArg, format!("unknown mode {m}"))),
    }
}

fn check_state(sys: &IrrSystem, y: usize) -> Result<(), Fail> {
    let total = sys.map.space().total_states();
    if y >= total {
        return Err(Error::StateOutOfRange { state: y, total }.into());
    }
    Ok(())
}

unsafe fn emit_system(out: *mut *mut IrrSystem, sys: IrrSystem) -> Result<(), Fail> {
    put(out, Box::into_raw(Box::new(sys)), "out")
}

/// Builds a system from threshold-DSL text.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn irr_system_from_spec(
    spec: *const c_char,
    out: *mut *mut IrrSystem,
) -> IrrStatus {
    guard(|| {
        let spec = parse_network_spec(text(spec, "spec")?)?;
        let map = build_transition_map(&spec)?;
        emit_system(out, IrrSystem::new("network".into(), map))
    })
}

/// Builds a system from a transition table (`bits -> bits` per line).
///
/// # Safety
/// `table` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn irr_system_from_table(
    table: *const c_char,
    out: *mut *mut IrrSystem,
) -> IrrStatus {
    guard(|| {
        let map = parse_transition_table(text(table, "table")?)?;
        emit_system(out, IrrSystem::new("table".into(), map))
    })
}

/// Builds one of the named example networks, e.g. `"OR-GET"` or `"4321"`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn irr_system_builtin(
    name: *const c_char,
    out: *mut *mut IrrSystem,
) -> IrrStatus {
    guard(|| {
        let name = text(name, "name")?;
        let net = corpus::lookup(name).ok_or_else(|| {
            Fail(
                IrrStatus::InvalidArg,
                format!("unknown built-in network {name:?}"),
            )
        })?;
        emit_system(out, IrrSystem::new(net.name, net.map))
    })
}

/// A new system whose one step is `t` steps of `sys`.
///
/// # Safety
/// `sys` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn irr_system_compose(
    sys: *const IrrSystem,
    t: usize,
    out: *mut *mut IrrSystem,
) -> IrrStatus {
    guard(|| {
        let sys = system(sys)?;
        let map = compose_t_steps(&sys.map, t)?;
        emit_system(out, IrrSystem::new(format!("{}^{t}", sys.name), map))
    })
}

/// Frees a handle. NULL is ignored.
///
/// # Safety
/// `sys` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn irr_system_free(sys: *mut IrrSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// # Safety
/// `sys` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn irr_system_node_count(
    sys: *const IrrSystem,
    out: *mut usize,
) -> IrrStatus {
    guard(|| put(out, system(sys)?.map.node_count(), "out"))
}

/// # Safety
/// `sys` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn irr_system_next_state(
    sys: *const IrrSystem,
    x: usize,
    out: *mut usize,
) -> IrrStatus {
    guard(|| {
        let sys = system(sys)?;
        check_state(sys, x)?;
        put(out, sys.map.next(x), "out")
    })
}

/// `P(y)` under uniform inputs.
///
/// # Safety
/// `sys` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn irr_output_probability(
    sys: *const IrrSystem,
    y: usize,
    out: *mut f64,
) -> IrrStatus {
    guard(|| {
        let sys = system(sys)?;
        check_state(sys, y)?;
        put(out, sys.joint.output_marginal().prob(y), "out")
    })
}

/// Effective information `ei(X -> y)` in bits.
///
/// # Safety
/// `sys` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn irr_ei(sys: *const IrrSystem, y: usize, out: *mut f64) -> IrrStatus {
    guard(|| {
        let sys = system(sys)?;
        check_state(sys, y)?;
        put(out, phi::effective_information(&sys.joint, y)?, "out")
    })
}

/// `φ(y)`: ei beyond the minimum information partition.
///
/// # Safety
/// `sys` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn irr_phi(
    sys: *const IrrSystem,
    y: usize,
    mode_: u32,
    out: *mut f64,
) -> IrrStatus {
    guard(|| {
        let sys = system(sys)?;
        check_state(sys, y)?;
        put(out, phi::phi_of_state(&sys.joint, y, mode(mode_)?)?, "out")
    })
}

/// Lower and upper bound on `ψ(y)`.
///
/// # Safety
/// `sys` must be a live handle; `lower` and `upper` must be writable.
#[no_mangle]
pub unsafe extern "C" fn irr_psi_bounds(
    sys: *const IrrSystem,
    y: usize,
    lower: *mut f64,
    upper: *mut f64,
) -> IrrStatus {
    guard(|| {
        let sys = system(sys)?;
        check_state(sys, y)?;
        if lower.is_null() || upper.is_null() {
            return Err(null("lower/upper"));
        }
        let b = psi::psi_bounds_state(&sys.joint, y)?;
        put(lower, b.lower, "lower")?;
        put(upper, b.upper, "upper")
    })
}

/// Averaged `⟨φ⟩`.
///
/// # Safety
/// `sys` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn irr_bracket_phi(
    sys: *const IrrSystem,
    mode_: u32,
    out: *mut f64,
) -> IrrStatus {
    guard(|| {
        let sys = system(sys)?;
        let b = PhiAnalyzer::new(&sys.joint)?.bracket(mode(mode_)?)?;
        put(out, b.phi, "out")
    })
}

/// Averaged `⟨ψ⟩` bounds.
///
/// # Safety
/// `sys` must be a live handle; `lower` and `upper` must be writable.
#[no_mangle]
pub unsafe extern "C" fn irr_bracket_psi(
    sys: *const IrrSystem,
    lower: *mut f64,
    upper: *mut f64,
) -> IrrStatus {
    guard(|| {
        let sys = system(sys)?;
        if lower.is_null() || upper.is_null() {
            return Err(null("lower/upper"));
        }
        let b = psi::bracket_psi_bounds(&sys.joint)?;
        put(lower, b.lower, "lower")?;
        put(upper, b.upper, "upper")
    })
}

/// `I(X;Y)` in bits.
///
/// # Safety
/// `sys` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn irr_mutual_information(sys: *const IrrSystem, out: *mut f64) -> IrrStatus {
    guard(|| put(out, mutual_information(&system(sys)?.joint), "out"))
}

/// Full report as a newly allocated string; free it with `irr_string_free`.
///
/// # Safety
/// `sys` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn irr_report(
    sys: *const IrrSystem,
    format: u32,
    out: *mut *mut c_char,
) -> IrrStatus {
    guard(|| {
        let sys = system(sys)?;
        let format = match format {
            IRR_FORMAT_MD => Format::Md,
            IRR_FORMAT_CSV => Format::Csv,
            IRR_FORMAT_JSON => Format::Json,
            _ => {
                return Err(Fail(
                    IrrStatus::InvalidArg,
                    format!("unknown format {format}"),
                ))
            }
        };
        let report = build_report(&sys.name, &sys.map, &ReportOptions::default())?;
        let s = CString::new(render(&report, format))
            .map_err(|e| Fail(IrrStatus::InvalidArg, e.to_string()))?;
        put(out, s.into_raw(), "out")
    })
}

/// Frees a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string from `irr_report`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn irr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or NULL after a success.
/// Valid until the next `irr_*` call on the same thread.
#[no_mangle]
pub extern "C" fn irr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
