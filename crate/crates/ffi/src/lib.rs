//! C ABI for the burnt-pancake library.
//!
//! Every fallible function returns a [`BpStatus`] and writes its result
//! through an out pointer. On failure a human-readable message is available
//! from [`bp_last_error_message`] on the same thread. Objects are opaque
//! handles owned by the caller and released with the matching `*_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use burnt_pancake::{
    build_oracle, psrd_lower_bound, psrd_simple, sort_simple, BreakpointGraph, Error, FlipSequence, Generators,
    OracleTable, SignedPermutation,
};

/// Result codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    OutOfRange = 4,
    NotSimple = 5,
    OverCap = 6,
    Precondition = 7,
    Internal = 8,
}

/// A signed permutation.
pub struct BpPerm(SignedPermutation);

/// A sequence of prefix flip lengths.
pub struct BpFlips(FlipSequence);

/// A precomputed distance table.
pub struct BpOracle(OracleTable);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

fn status_of(err: &Error) -> BpStatus {
    match err {
        Error::Empty | Error::InvalidToken(_) | Error::ZeroEntry(_) | Error::Duplicate(_) | Error::Gap { .. } => {
            BpStatus::Parse
        }
        Error::FlipOutOfRange { .. } | Error::ReversalOutOfRange { .. } | Error::ExchangeOutOfRange { .. } => {
            BpStatus::OutOfRange
        }
        Error::NotSimple(_) => BpStatus::NotSimple,
        Error::OverCap { .. } => BpStatus::OverCap,
        Error::Signed(_) | Error::Precondition(_) => BpStatus::Precondition,
        Error::Table(_) | Error::Internal(_) => BpStatus::Internal,
    }
}

fn fail(status: BpStatus, msg: impl Into<String>) -> BpStatus {
    set_last_error(msg);
    status
}

fn guard(f: impl FnOnce() -> Result<(), BpStatus>) -> BpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BpStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(BpStatus::Internal, "panic inside library call"),
    }
}

fn lift<T>(r: burnt_pancake::Result<T>) -> Result<T, BpStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, BpStatus> {
    p.as_ref().ok_or_else(|| fail(BpStatus::NullPointer, "null pointer argument"))
}

unsafe fn deref_mut<'a, T>(p: *mut T) -> Result<&'a mut T, BpStatus> {
    p.as_mut().ok_or_else(|| fail(BpStatus::NullPointer, "null pointer argument"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), BpStatus> {
    if out.is_null() {
        return Err(fail(BpStatus::NullPointer, "null output pointer"));
    }
    out.write(value);
    Ok(())
}

/// Message describing the most recent failure on this thread, or null.
///
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a whitespace-separated permutation such as `"-3 1 2"`.
///
/// # Safety
/// `text` must be null or a valid nul-terminated string; `out` must be null
/// or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bp_perm_parse(text: *const c_char, out: *mut *mut BpPerm) -> BpStatus {
    guard(|| {
        if text.is_null() {
            return Err(fail(BpStatus::NullPointer, "null text"));
        }
        let text = CStr::from_ptr(text).to_str().map_err(|e| fail(BpStatus::InvalidUtf8, e.to_string()))?;
        let pi = lift(text.parse::<SignedPermutation>())?;
        write_out(out, Box::into_raw(Box::new(BpPerm(pi))))
    })
}

/// Builds a permutation from `len` entries.
///
/// # Safety
/// `entries` must point to `len` readable integers; `out` must be valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn bp_perm_from_entries(entries: *const i32, len: usize, out: *mut *mut BpPerm) -> BpStatus {
    guard(|| {
        if entries.is_null() {
            return Err(fail(BpStatus::NullPointer, "null entries"));
        }
        let slice = std::slice::from_raw_parts(entries, len);
        let pi = lift(SignedPermutation::from_entries(slice.to_vec()))?;
        write_out(out, Box::into_raw(Box::new(BpPerm(pi))))
    })
}

/// Releases a permutation. Null is ignored.
///
/// # Safety
/// `perm` must be null or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bp_perm_free(perm: *mut BpPerm) {
    if !perm.is_null() {
        drop(Box::from_raw(perm));
    }
}

/// Number of entries, or 0 for a null handle.
///
/// # Safety
/// `perm` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bp_perm_len(perm: *const BpPerm) -> usize {
    perm.as_ref().map_or(0, |p| p.0.len())
}

/// Copies the entries into `buf`, which must hold at least `bp_perm_len` values.
///
/// # Safety
/// `perm` must be a live handle and `buf` valid for `cap` writes.
#[no_mangle]
pub unsafe extern "C" fn bp_perm_entries(perm: *const BpPerm, buf: *mut i32, cap: usize) -> BpStatus {
    guard(|| {
        let pi = &deref(perm)?.0;
        if buf.is_null() {
            return Err(fail(BpStatus::NullPointer, "null buffer"));
        }
        if cap < pi.len() {
            return Err(fail(BpStatus::OutOfRange, format!("buffer holds {cap} entries, need {}", pi.len())));
        }
        ptr::copy_nonoverlapping(pi.entries().as_ptr(), buf, pi.len());
        Ok(())
    })
}

/// Formats the permutation as a newly allocated string; free it with
/// [`bp_string_free`].
///
/// # Safety
/// `perm` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bp_perm_to_string(perm: *const BpPerm, out: *mut *mut c_char) -> BpStatus {
    guard(|| {
        let text = deref(perm)?.0.to_string();
        let c = CString::new(text).map_err(|e| fail(BpStatus::Internal, e.to_string()))?;
        write_out(out, c.into_raw())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Applies the prefix flip of length `k` in place.
///
/// # Safety
/// `perm` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn bp_perm_prefix_flip(perm: *mut BpPerm, k: usize) -> BpStatus {
    guard(|| lift(deref_mut(perm)?.0.prefix_flip_in_place(k)))
}

/// Whether every cycle of the breakpoint graph has length at most 2.
///
/// # Safety
/// `perm` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bp_perm_is_simple(perm: *const BpPerm, out: *mut bool) -> BpStatus {
    guard(|| {
        let simple = BreakpointGraph::new(&deref(perm)?.0).is_simple();
        write_out(out, simple)
    })
}

/// Cycle-count lower bound on the prefix signed reversal distance.
///
/// # Safety
/// `perm` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bp_lower_bound(perm: *const BpPerm, out: *mut usize) -> BpStatus {
    guard(|| {
        let g = psrd_lower_bound(&deref(perm)?.0);
        write_out(out, g)
    })
}

/// Exact prefix signed reversal distance of a simple permutation.
///
/// # Safety
/// `perm` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bp_psrd_simple(perm: *const BpPerm, out: *mut usize) -> BpStatus {
    guard(|| {
        let d = lift(psrd_simple(&deref(perm)?.0))?;
        write_out(out, d)
    })
}

/// Optimal flip sequence sorting a simple permutation.
///
/// # Safety
/// `perm` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bp_sort_simple(perm: *const BpPerm, out: *mut *mut BpFlips) -> BpStatus {
    guard(|| {
        let trace = lift(sort_simple(&deref(perm)?.0))?;
        write_out(out, Box::into_raw(Box::new(BpFlips(trace.flips))))
    })
}

/// Number of flips, or 0 for a null handle.
///
/// # Safety
/// `flips` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bp_flips_len(flips: *const BpFlips) -> usize {
    flips.as_ref().map_or(0, |f| f.0.len())
}

/// Pointer to the flip lengths, valid while the handle lives.
///
/// # Safety
/// `flips` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bp_flips_data(flips: *const BpFlips) -> *const usize {
    flips.as_ref().map_or(ptr::null(), |f| f.0.lengths().as_ptr())
}

/// Releases a flip sequence. Null is ignored.
///
/// # Safety
/// `flips` must be null or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bp_flips_free(flips: *mut BpFlips) {
    if !flips.is_null() {
        drop(Box::from_raw(flips));
    }
}

/// Builds a distance table by breadth-first search. `exchanges` selects
/// prefix exchanges on unsigned permutations instead of prefix signed
/// reversals.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bp_oracle_build(n: usize, exchanges: bool, out: *mut *mut BpOracle) -> BpStatus {
    guard(|| {
        let generators = if exchanges { Generators::PrefixExchanges } else { Generators::PrefixSignedReversals };
        let table = lift(build_oracle(n, generators))?;
        write_out(out, Box::into_raw(Box::new(BpOracle(table))))
    })
}

/// Looks up the distance of `perm` in the table.
///
/// # Safety
/// `oracle` and `perm` must be live handles and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bp_oracle_distance(oracle: *const BpOracle, perm: *const BpPerm, out: *mut u8) -> BpStatus {
    guard(|| {
        let d = lift(deref(oracle)?.0.distance(&deref(perm)?.0))?;
        write_out(out, d)
    })
}

/// Releases a distance table. Null is ignored.
///
/// # Safety
/// `oracle` must be null or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bp_oracle_free(oracle: *mut BpOracle) {
    if !oracle.is_null() {
        drop(Box::from_raw(oracle));
    }
}
