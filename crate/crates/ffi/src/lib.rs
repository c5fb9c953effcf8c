//! C ABI over `ringel-core`.
//!
//! Every function returns a [`RingelStatus`]; results are written through out-pointers.
//! Algebras are passed as opaque [`RingelAlgebra`] handles owned by the caller and released
//! with [`ringel_algebra_free`]. After a failing call, [`ringel_last_error`] describes the
//! failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use ringel_core::algebra::{build_monomial_algebra, FiniteDimAlgebra};
use ringel_core::dsl::parse_dsl;
use ringel_core::endo::build_er;
use ringel_core::generators::{knorrer, nakayama_cyclic};
use ringel_core::ideals::{is_ideally_ordered, iso_classes};
use ringel_core::modules::{global_dimension, GlobalDimension};
use ringel_core::qh::verify_duality;
use ringel_core::Error;

/// Result code of every exported function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingelStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Input = 3,
    Parse = 4,
    Build = 5,
    Unsupported = 6,
    TheoremViolation = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

/// Opaque handle to a finite-dimensional algebra.
pub struct RingelAlgebra {
    inner: Arc<FiniteDimAlgebra>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn fail(status: RingelStatus, msg: impl Into<String>) -> RingelStatus {
    set_error(msg);
    status
}

fn from_core(err: Error) -> RingelStatus {
    let status = match err {
        Error::Input(_) => RingelStatus::Input,
        Error::Parse { .. } => RingelStatus::Parse,
        Error::Build(_) => RingelStatus::Build,
        Error::Unsupported(_) => RingelStatus::Unsupported,
        Error::TheoremViolation(_) => RingelStatus::TheoremViolation,
    };
    fail(status, err.to_string())
}

fn guard(f: impl FnOnce() -> RingelStatus) -> RingelStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(RingelStatus::Panic, msg)
        }
    }
}

unsafe fn algebra<'a>(h: *const RingelAlgebra) -> Result<&'a Arc<FiniteDimAlgebra>, RingelStatus> {
    if h.is_null() {
        return Err(fail(RingelStatus::NullPointer, "null algebra handle"));
    }
    Ok(&(*h).inner)
}

unsafe fn put<T>(out: *mut T, v: T) -> RingelStatus {
    if out.is_null() {
        return fail(RingelStatus::NullPointer, "null output pointer");
    }
    out.write(v);
    RingelStatus::Ok
}

unsafe fn put_handle(out: *mut *mut RingelAlgebra, a: FiniteDimAlgebra) -> RingelStatus {
    put_arc(out, Arc::new(a))
}

unsafe fn put_arc(out: *mut *mut RingelAlgebra, a: Arc<FiniteDimAlgebra>) -> RingelStatus {
    if out.is_null() {
        return fail(RingelStatus::NullPointer, "null output pointer");
    }
    out.write(Box::into_raw(Box::new(RingelAlgebra { inner: a })));
    RingelStatus::Ok
}

unsafe fn put_slice(values: &[usize], buf: *mut usize, cap: usize, len: *mut usize) -> RingelStatus {
    if len.is_null() {
        return fail(RingelStatus::NullPointer, "null length pointer");
    }
    len.write(values.len());
    if cap < values.len() {
        return fail(RingelStatus::BufferTooSmall, format!("need {} entries, got {cap}", values.len()));
    }
    if values.is_empty() {
        return RingelStatus::Ok;
    }
    if buf.is_null() {
        return fail(RingelStatus::NullPointer, "null buffer");
    }
    ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    RingelStatus::Ok
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

macro_rules! core {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return from_core(e),
        }
    };
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ringel_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failure on this thread, or NULL. Valid until the next call.
#[no_mangle]
pub extern "C" fn ringel_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses an algebra file and builds the algebra, truncating linear relations at `max_degree`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ringel_algebra_from_dsl(
    text: *const c_char,
    max_degree: usize,
    out: *mut *mut RingelAlgebra,
) -> RingelStatus {
    guard(|| {
        if text.is_null() {
            return fail(RingelStatus::NullPointer, "null text");
        }
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            return fail(RingelStatus::InvalidUtf8, "text is not UTF-8");
        };
        let spec = core!(parse_dsl(text));
        put_handle(out, core!(spec.build(max_degree)))
    })
}

/// The Knörrer invariant algebra for r/a.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ringel_algebra_knorrer(r: u64, a: u64, out: *mut *mut RingelAlgebra) -> RingelStatus {
    guard(|| put_handle(out, core!(build_monomial_algebra(&core!(knorrer(r, a))))))
}

/// kC_n/J^m for the cyclic quiver on n vertices.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ringel_algebra_nakayama(n: usize, m: usize, out: *mut *mut RingelAlgebra) -> RingelStatus {
    guard(|| put_handle(out, core!(build_monomial_algebra(&core!(nakayama_cyclic(n, m))))))
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `h` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ringel_algebra_free(h: *mut RingelAlgebra) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ringel_algebra_dim(h: *const RingelAlgebra, out: *mut usize) -> RingelStatus {
    guard(|| put(out, tri!(algebra(h)).dim()))
}

/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ringel_algebra_vertex_count(h: *const RingelAlgebra, out: *mut usize) -> RingelStatus {
    guard(|| put(out, tri!(algebra(h)).vertex_count()))
}

/// Cartan matrix, row-major: entry (i, j) = dim e_i A e_j. `len` receives n²; when `cap` is
/// smaller the status is `BufferTooSmall` and nothing is copied.
///
/// # Safety
/// `h` must be a live handle; `buf` must hold `cap` entries; `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ringel_algebra_cartan(
    h: *const RingelAlgebra,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> RingelStatus {
    guard(|| {
        let flat: Vec<usize> = tri!(algebra(h)).cartan_matrix().concat();
        put_slice(&flat, buf, cap, len)
    })
}

/// The opposite algebra as a new handle.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ringel_algebra_opposite(
    h: *const RingelAlgebra,
    out: *mut *mut RingelAlgebra,
) -> RingelStatus {
    guard(|| put_handle(out, tri!(algebra(h)).opposite()))
}

/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ringel_is_ideally_ordered(h: *const RingelAlgebra, out: *mut bool) -> RingelStatus {
    guard(|| put(out, core!(is_ideally_ordered(tri!(algebra(h)))).ordered))
}

/// Dimensions of the isomorphism classes of monomial ideals, in class order.
///
/// # Safety
/// As for [`ringel_algebra_cartan`].
#[no_mangle]
pub unsafe extern "C" fn ringel_ideal_class_dims(
    h: *const RingelAlgebra,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> RingelStatus {
    guard(|| {
        let dims: Vec<usize> = core!(iso_classes(tri!(algebra(h)))).iter().map(|c| c.dim()).collect();
        put_slice(&dims, buf, cap, len)
    })
}

/// E_R = End_R of the sum of the monomial ideal classes, as a new handle.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ringel_endomorphism_algebra(
    h: *const RingelAlgebra,
    out: *mut *mut RingelAlgebra,
) -> RingelStatus {
    guard(|| put_arc(out, core!(build_er(tri!(algebra(h)))).algebra))
}

/// Global dimension up to `bound`. `finite` is false when it exceeds the bound, in which case
/// `dim` receives the bound.
///
/// # Safety
/// `h` must be a live handle; `dim` and `finite` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ringel_global_dimension(
    h: *const RingelAlgebra,
    bound: usize,
    dim: *mut usize,
    finite: *mut bool,
) -> RingelStatus {
    guard(|| {
        let (d, f) = match core!(global_dimension(tri!(algebra(h)), bound)) {
            GlobalDimension::Finite(d) => (d, true),
            GlobalDimension::Exceeds(b) => (b, false),
        };
        let s = put(dim, d);
        if s != RingelStatus::Ok {
            return s;
        }
        put(finite, f)
    })
}

/// Runs the constructive Ringel duality check; `pass` receives the verdict and `end_t_dim`
/// the dimension of End(T).
///
/// # Safety
/// `h` must be a live handle; `pass` and `end_t_dim` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ringel_verify_duality(
    h: *const RingelAlgebra,
    pass: *mut bool,
    end_t_dim: *mut usize,
) -> RingelStatus {
    guard(|| {
        let rep = core!(verify_duality(tri!(algebra(h))));
        let s = put(pass, rep.pass);
        if s != RingelStatus::Ok {
            return s;
        }
        put(end_t_dim, rep.end_t.algebra.dim())
    })
}

/// Name of the algebra as a newly allocated string; free with [`ringel_string_free`].
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ringel_algebra_name(h: *const RingelAlgebra, out: *mut *mut c_char) -> RingelStatus {
    guard(|| {
        let name = tri!(algebra(h)).name().replace('\0', " ");
        put(out, CString::new(name).expect("NUL removed").into_raw())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn ringel_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
