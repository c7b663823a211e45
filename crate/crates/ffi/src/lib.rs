//! C ABI over `kappa-core`.
//!
//! Objects are opaque handles created by `kp_*_new`/`kp_*_parse`/`kp_table_derive`
//! and released with the matching `kp_*_free`. Every fallible call returns a
//! [`KpStatus`]; on failure the message is available from
//! [`kp_last_error_message`] on the same thread until the next call.
//! Strings handed out by the library are released with [`kp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kappa_core::hopf::HopfPair;
use kappa_core::represent::{self, SweepConfig};
use kappa_core::smash::{self, DerivedTable};
use kappa_core::{syntax, Basis, CoproductVariant, Element, Error, MetricSign, Order, SmashConfig};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    Parse = 4,
    Algebra = 5,
    MissingFixture = 6,
    Numeric = 7,
    Panic = 8,
}

/// Generator basis of `Δ(P_k)`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KpBasis {
    Bicrossproduct = 0,
    Standard = 1,
}

/// Factor order of the cross product.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KpOrder {
    Xp = 0,
    Px = 1,
}

/// Opaque derived phase-space table.
pub struct KpTable(DerivedTable);

/// Opaque algebra element.
pub struct KpElement(Element);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(KpStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Syntax { .. } | Error::UnknownSymbol { .. } => KpStatus::Parse,
            Error::MissingFixture(_) | Error::BadFixture { .. } => KpStatus::MissingFixture,
            Error::InvalidGrid(_) | Error::NotNormalized(_) | Error::Overflow(_) | Error::Unrepresented(_) => {
                KpStatus::Numeric
            }
            Error::InvalidFlag { .. } => KpStatus::InvalidArgument,
            _ => KpStatus::Algebra,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> KpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            KpStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            KpStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(KpStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure(KpStatus::InvalidUtf8, e.to_string()))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(KpStatus::NullPointer, format!("null {what} handle")))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(KpStatus::NullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|e| Failure(KpStatus::Algebra, e.to_string()))
}

fn config(basis: KpBasis, order: KpOrder, flipped_metric: bool, transposed: bool) -> SmashConfig {
    let basis = match basis {
        KpBasis::Bicrossproduct => Basis::Bicrossproduct,
        KpBasis::Standard => Basis::Standard,
    };
    let order = match order {
        KpOrder::Xp => Order::Xp,
        KpOrder::Px => Order::Px,
    };
    let metric = if flipped_metric { MetricSign::Flipped } else { MetricSign::Standard };
    let coproduct = if transposed { CoproductVariant::Transposed } else { CoproductVariant::Direct };
    SmashConfig::new(basis, order).with_metric(metric).with_coproduct(coproduct)
}

/// Message of the last failed call on this thread, or null. Owned by the library.
#[no_mangle]
pub extern "C" fn kp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn kp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Derives the phase-space table for a configuration.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kp_table_derive(
    basis: KpBasis,
    order: KpOrder,
    flipped_metric: bool,
    transposed_coproduct: bool,
    out: *mut *mut KpTable,
) -> KpStatus {
    guard(|| {
        let t = smash::derive_table(config(basis, order, flipped_metric, transposed_coproduct))?;
        write(out, Box::into_raw(Box::new(KpTable(t))))
    })
}

/// # Safety
/// `t` must come from [`kp_table_derive`] and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn kp_table_free(t: *mut KpTable) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Serializes the table to JSON. Free the result with [`kp_string_free`].
///
/// # Safety
/// `t` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kp_table_to_json(t: *const KpTable, out: *mut *mut c_char) -> KpStatus {
    guard(|| {
        let t = handle(t, "table")?;
        write(out, owned_string(t.0.to_json().to_string())?)
    })
}

/// Compares the table with its reference fixture; `clean` is true when
/// nothing disagrees.
///
/// # Safety
/// `t` must be a live handle and `clean` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kp_table_verify(t: *const KpTable, clean: *mut bool) -> KpStatus {
    guard(|| {
        let report = smash::verify_against_reference(&handle(t, "table")?.0)?;
        write(clean, report.is_clean())
    })
}

/// Parses an element such as `"x1*P1 - i*hbar*E"`.
///
/// # Safety
/// `src` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kp_element_parse(src: *const c_char, out: *mut *mut KpElement) -> KpStatus {
    guard(|| {
        let e = syntax::parse(text(src)?)?;
        write(out, Box::into_raw(Box::new(KpElement(e))))
    })
}

/// # Safety
/// `e` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn kp_element_free(e: *mut KpElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Prints an element in the syntax accepted by [`kp_element_parse`].
///
/// # Safety
/// `e` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kp_element_to_string(e: *const KpElement, out: *mut *mut c_char) -> KpStatus {
    guard(|| write(out, owned_string(syntax::print(&handle(e, "element")?.0))?))
}

/// Normal form of `e` in the phase-space algebra of `t`.
///
/// # Safety
/// Handles must be live and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kp_table_normalize(
    t: *const KpTable,
    e: *const KpElement,
    out: *mut *mut KpElement,
) -> KpStatus {
    guard(|| {
        let n = handle(t, "table")?.0.normalize(&handle(e, "element")?.0)?;
        write(out, Box::into_raw(Box::new(KpElement(n))))
    })
}

/// Normal form of `[a, b]` in the phase-space algebra of `t`.
///
/// # Safety
/// Handles must be live and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kp_table_commutator(
    t: *const KpTable,
    a: *const KpElement,
    b: *const KpElement,
    out: *mut *mut KpElement,
) -> KpStatus {
    guard(|| {
        let c = handle(t, "table")?.0.commutator(&handle(a, "element")?.0, &handle(b, "element")?.0)?;
        write(out, Box::into_raw(Box::new(KpElement(c))))
    })
}

/// Duality pairing `<x, p>` for the Hopf pair underlying `t`, printed as a scalar.
///
/// # Safety
/// Handles must be live and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kp_table_pair(
    t: *const KpTable,
    x: *const KpElement,
    p: *const KpElement,
    out: *mut *mut c_char,
) -> KpStatus {
    guard(|| {
        let hopf = HopfPair::from_config(handle(t, "table")?.0.config())?;
        let s = hopf.pair(&handle(x, "element")?.0, &handle(p, "element")?.0)?;
        write(out, owned_string(s.to_string())?)
    })
}

/// Runs the uncertainty sweep for one κ over `states` seeded random states
/// and both represented cases. Writes the JSON report and whether every
/// inequality held.
///
/// # Safety
/// `json` and `passed` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kp_uncertainty_sweep(
    kappa: f64,
    states: u32,
    seed: u64,
    json: *mut *mut c_char,
    passed: *mut bool,
) -> KpStatus {
    guard(|| {
        if !(kappa > 0.0) || states == 0 {
            return Err(Failure(KpStatus::InvalidArgument, "kappa must be positive and states nonzero".into()));
        }
        let cfg = SweepConfig { kappas: vec![kappa], states: states as usize, seed, ..SweepConfig::default() };
        let report = represent::sweep(&cfg)?;
        let text = serde_json::to_string(&report).map_err(|e| Failure(KpStatus::Algebra, e.to_string()))?;
        write(json, owned_string(text)?)?;
        write(passed, report.passed())
    })
}
