//! C ABI for superz.
//!
//! Every function returns a [`SuperzStatus`]. On failure a message is kept
//! per thread and can be read with [`superz_last_error`]. Handles are
//! opaque and owned by the caller once returned; free them with the matching
//! `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use superz::diagrams::{diagram_osp, diagram_sl, LabelledDiagram};
use superz::nilpotent::Realization;
use superz::partitions::{Kind, Partition};
use superz::theorems::{centralizer_and_fixed_dims, verify, Analysis, Report};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuperzStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidPartition = 3,
    BufferTooSmall = 4,
    Internal = 5,
}

/// Algebra family.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuperzKind {
    Sl = 0,
    Osp = 1,
}

impl From<SuperzKind> for Kind {
    fn from(k: SuperzKind) -> Kind {
        match k {
            SuperzKind::Sl => Kind::Sl,
            SuperzKind::Osp => Kind::Osp,
        }
    }
}

/// A validated partition.
pub struct SuperzPartition(Partition);

/// Result of running every check on one partition.
pub struct SuperzReport(Report);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), (SuperzStatus, String)>) -> SuperzStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SuperzStatus::Ok,
        Ok(Err((code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal error");
            SuperzStatus::Internal
        }
    }
}

fn null() -> (SuperzStatus, String) {
    (SuperzStatus::NullPointer, "null pointer argument".into())
}

unsafe fn partition<'a>(p: *const SuperzPartition) -> Result<&'a Partition, (SuperzStatus, String)> {
    p.as_ref().map(|p| &p.0).ok_or_else(null)
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), (SuperzStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    out.write(v);
    Ok(())
}

fn diagram(part: &Partition) -> LabelledDiagram {
    let r = Realization::new(part, false);
    match part.kind() {
        Kind::Sl => diagram_sl(&r.pyramid),
        Kind::Osp => diagram_osp(&r.pyramid),
    }
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call on the same thread.
#[no_mangle]
pub extern "C" fn superz_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parse `"p|q"`, e.g. `"5,1|3"`.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn superz_partition_parse(kind: SuperzKind, text: *const c_char, out: *mut *mut SuperzPartition) -> SuperzStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return Err(null());
        }
        let s = CStr::from_ptr(text).to_str().map_err(|e| (SuperzStatus::InvalidUtf8, e.to_string()))?;
        let part = Partition::parse(s, kind.into()).map_err(|e| (SuperzStatus::InvalidPartition, e.to_string()))?;
        write(out, Box::into_raw(Box::new(SuperzPartition(part))))
    })
}

/// # Safety
/// `p` must come from `superz_partition_parse` or be null.
#[no_mangle]
pub unsafe extern "C" fn superz_partition_free(p: *mut SuperzPartition) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Even and odd dimensions of the natural module (`m` and `n`, or `m` and `2n`).
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn superz_partition_dims(p: *const SuperzPartition, even: *mut usize, odd: *mut usize) -> SuperzStatus {
    guard(|| {
        let part = partition(p)?;
        write(even, part.m())?;
        write(odd, part.odd_dim())
    })
}

/// `dim g^e`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn superz_centralizer_dim(p: *const SuperzPartition, out: *mut usize) -> SuperzStatus {
    guard(|| {
        let part = partition(p)?;
        write(out, centralizer_and_fixed_dims(part).0)
    })
}

/// `dim z(g^e)`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn superz_centre_dim(p: *const SuperzPartition, out: *mut usize) -> SuperzStatus {
    guard(|| {
        let part = partition(p)?;
        write(out, Analysis::new(part).centre.dim())
    })
}

/// Dimension of the part of `z(g^e)` fixed by the centralizer group.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn superz_fixed_dim(p: *const SuperzPartition, out: *mut usize) -> SuperzStatus {
    guard(|| {
        let part = partition(p)?;
        write(out, centralizer_and_fixed_dims(part).1)
    })
}

/// Labels of the Dynkin diagram, in node order.
///
/// `len` always receives the number of nodes. If `cap` is too small nothing
/// is copied and `BufferTooSmall` is returned; pass `buf = NULL, cap = 0`
/// to query the length.
///
/// # Safety
/// `buf` must hold `cap` elements; `len` must be valid.
#[no_mangle]
pub unsafe extern "C" fn superz_diagram_labels(p: *const SuperzPartition, buf: *mut i64, cap: usize, len: *mut usize) -> SuperzStatus {
    guard(|| {
        let part = partition(p)?;
        let labels = diagram(part).labels();
        write(len, labels.len())?;
        if labels.is_empty() {
            return Ok(());
        }
        if cap < labels.len() {
            return Err((SuperzStatus::BufferTooSmall, format!("need room for {} labels", labels.len())));
        }
        if buf.is_null() {
            return Err(null());
        }
        ptr::copy_nonoverlapping(labels.as_ptr(), buf, labels.len());
        Ok(())
    })
}

/// Run every check. `so_variant` uses `SO_m` in place of `O_m`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn superz_verify(p: *const SuperzPartition, so_variant: bool, out: *mut *mut SuperzReport) -> SuperzStatus {
    guard(|| {
        let part = partition(p)?;
        if out.is_null() {
            return Err(null());
        }
        write(out, Box::into_raw(Box::new(SuperzReport(verify(part, so_variant)))))
    })
}

/// # Safety
/// `r` must be a valid report.
#[no_mangle]
pub unsafe extern "C" fn superz_report_passed(r: *const SuperzReport, out: *mut bool) -> SuperzStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(null)?;
        write(out, r.0.passed())
    })
}

/// Report as JSON. Free the string with `superz_string_free`.
///
/// # Safety
/// `r` must be a valid report.
#[no_mangle]
pub unsafe extern "C" fn superz_report_json(r: *const SuperzReport, out: *mut *mut c_char) -> SuperzStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(null)?;
        let s = serde_json::to_string(&r.0).map_err(|e| (SuperzStatus::Internal, e.to_string()))?;
        let c = CString::new(s).map_err(|e| (SuperzStatus::Internal, e.to_string()))?;
        write(out, c.into_raw())
    })
}

/// # Safety
/// `r` must come from `superz_verify` or be null.
#[no_mangle]
pub unsafe extern "C" fn superz_report_free(r: *mut SuperzReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn superz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
