//! C ABI over the `gorenstein` crate.
//!
//! Algebras are opaque handles created from the same `key = value` text the
//! command-line tool reads. Every function returns a [`GorStatus`]; results
//! are written through out-pointers. Strings handed to the caller are owned
//! by Rust and must be released with [`gor_string_free`]. After a failure,
//! [`gor_last_error_message`] describes what went wrong on this thread.
//!
//! Panics never cross the boundary: they are reported as
//! `GOR_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gorenstein::algebra::QuotientAlgebra;
use gorenstein::cli::{structure_section, AlgebraFile};
use gorenstein::invsys::{default_complement, extract_and_verify, verify_inverse_system};
use gorenstein::isocheck::{decide_isomorphism, IsoOptions, Verdict};
use gorenstein::nilpoly::{default_projection, nil_polynomial, AdmissibleProjection};
use gorenstein::polycore::parse_polynomial;
use gorenstein::Error;

/// Status codes. Values 2..=6 match the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GorStatus {
    Ok = 0,
    /// A required pointer was null or a string was not UTF-8.
    InvalidArgument = 1,
    /// Malformed input, or any other rejected input.
    Parse = 2,
    InfiniteDimensional = 3,
    NotLocal = 4,
    NotGorenstein = 5,
    NotAComplement = 6,
    Panic = 99,
}

/// Outcome of [`gor_isocheck`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GorVerdict {
    Isomorphic = 0,
    NotIsomorphic = 1,
    Unknown = 7,
}

/// Opaque algebra handle.
pub struct GorAlgebra {
    algebra: QuotientAlgebra,
    weights: Option<Vec<u32>>,
    projection: Option<AdmissibleProjection>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(e: Error) -> GorStatus {
    let status = match e.exit_code() {
        3 => GorStatus::InfiniteDimensional,
        4 => GorStatus::NotLocal,
        5 => GorStatus::NotGorenstein,
        6 => GorStatus::NotAComplement,
        _ => GorStatus::Parse,
    };
    set_error(e.to_string());
    status
}

fn invalid(what: &str) -> GorStatus {
    set_error(format!("invalid argument: {what}"));
    GorStatus::InvalidArgument
}

fn guard(f: impl FnOnce() -> GorStatus) -> GorStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            GorStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Option<&'a str> {
    if s.is_null() {
        return None;
    }
    // SAFETY: caller passes a nul-terminated string.
    unsafe { CStr::from_ptr(s) }.to_str().ok()
}

fn give_string(s: String, out: *mut *mut c_char) {
    let c = CString::new(s.replace('\0', " ")).expect("no interior nul");
    // SAFETY: out checked non-null by callers.
    unsafe { *out = c.into_raw() };
}

impl GorAlgebra {
    fn projection(&mut self) -> Result<&AdmissibleProjection, Error> {
        if self.projection.is_none() {
            self.projection = Some(default_projection(&self.algebra)?);
        }
        Ok(self.projection.as_ref().expect("just set"))
    }
}

/// Builds an algebra from algebra-file text (`vars = ...`, `gens = ...`).
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gor_algebra_new(
    text: *const c_char,
    out: *mut *mut GorAlgebra,
) -> GorStatus {
    guard(|| {
        if out.is_null() {
            return invalid("out is null");
        }
        // SAFETY: forwarded from the caller.
        let Some(text) = (unsafe { read_str(text) }) else {
            return invalid("text is null or not UTF-8");
        };
        let built = AlgebraFile::parse(text).and_then(|f| Ok((f.build(None)?, f.weights)));
        match built {
            Ok((algebra, weights)) => {
                let h = Box::new(GorAlgebra {
                    algebra,
                    weights,
                    projection: None,
                });
                // SAFETY: out is non-null.
                unsafe { *out = Box::into_raw(h) };
                GorStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Releases a handle from [`gor_algebra_new`]. Null is ignored.
///
/// # Safety
/// `a` must come from [`gor_algebra_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn gor_algebra_free(a: *mut GorAlgebra) {
    if !a.is_null() {
        // SAFETY: ownership returns to Rust.
        drop(unsafe { Box::from_raw(a) });
    }
}

/// Writes the vector-space dimension of the algebra.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gor_algebra_dimension(a: *const GorAlgebra, out: *mut usize) -> GorStatus {
    guard(|| {
        // SAFETY: caller contract.
        let (Some(a), false) = (unsafe { a.as_ref() }, out.is_null()) else {
            return invalid("null pointer");
        };
        unsafe { *out = a.algebra.dim() };
        GorStatus::Ok
    })
}

/// Structure report as a JSON object (dimension, locality, Gorenstein flag,
/// nil-index, embedding dimension, filtration, socle generator, grading).
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gor_algebra_structure_json(
    a: *const GorAlgebra,
    out: *mut *mut c_char,
) -> GorStatus {
    guard(|| {
        // SAFETY: caller contract.
        let (Some(a), false) = (unsafe { a.as_ref() }, out.is_null()) else {
            return invalid("null pointer");
        };
        match structure_section(&a.algebra, a.weights.as_deref()) {
            Ok(s) => {
                give_string(serde_json::to_string(&s).expect("serializable"), out);
                GorStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Nil-polynomial of the default projection, in variables `a1..an`.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gor_nil_polynomial(
    a: *mut GorAlgebra,
    out: *mut *mut c_char,
) -> GorStatus {
    guard(|| {
        // SAFETY: caller contract.
        let (Some(a), false) = (unsafe { a.as_mut() }, out.is_null()) else {
            return invalid("null pointer");
        };
        let r = a
            .projection()
            .cloned()
            .and_then(|pi| nil_polynomial(&a.algebra, &pi));
        match r {
            Ok(p) => {
                give_string(p.to_string(), out);
                GorStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Extracts an inverse system from the nil-polynomial using the default
/// complement and verifies it. `q` receives the polynomial (may be null if
/// not wanted), `verified` the verdict.
///
/// # Safety
/// `a` must be a live handle; `verified` a valid pointer; `q` null or valid.
#[no_mangle]
pub unsafe extern "C" fn gor_inverse_system(
    a: *mut GorAlgebra,
    q: *mut *mut c_char,
    verified: *mut bool,
) -> GorStatus {
    guard(|| {
        // SAFETY: caller contract.
        let (Some(a), false) = (unsafe { a.as_mut() }, verified.is_null()) else {
            return invalid("null pointer");
        };
        let r = a.projection().cloned().and_then(|pi| {
            let p = nil_polynomial(&a.algebra, &pi)?;
            let l = default_complement(&a.algebra, &pi)?;
            extract_and_verify(&a.algebra, &p, &l)
        });
        match r {
            Ok(v) => {
                if !q.is_null() {
                    give_string(v.polynomial.to_string(), q);
                }
                unsafe { *verified = v.verdict() };
                GorStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Checks whether `g` (in the algebra's variables) is an inverse system.
///
/// # Safety
/// `a` must be a live handle, `g` a nul-terminated string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn gor_verify_inverse_system(
    a: *const GorAlgebra,
    g: *const c_char,
    out: *mut bool,
) -> GorStatus {
    guard(|| {
        // SAFETY: caller contract.
        let (Some(a), Some(g), false) =
            (unsafe { a.as_ref() }, unsafe { read_str(g) }, out.is_null())
        else {
            return invalid("null pointer or non-UTF-8 string");
        };
        let r = parse_polynomial(g, a.algebra.vars())
            .and_then(|g| verify_inverse_system(&a.algebra, &g));
        match r {
            Ok(v) => {
                unsafe { *out = v.verdict() };
                GorStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Decides whether two Gorenstein algebras are isomorphic.
///
/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gor_isocheck(
    a: *mut GorAlgebra,
    b: *mut GorAlgebra,
    out: *mut GorVerdict,
) -> GorStatus {
    guard(|| {
        if a.is_null() || b.is_null() || out.is_null() {
            return invalid("null pointer");
        }
        // SAFETY: caller contract; `a` and `b` may alias, so only shared
        // borrows are held while both are in use.
        let r = (|| {
            let pa = unsafe { &mut *a }.projection()?.clone();
            let pb = unsafe { &mut *b }.projection()?.clone();
            let (a, b) = unsafe { (&*a, &*b) };
            let opts = IsoOptions {
                weights: (a.weights.clone(), b.weights.clone()),
                ..IsoOptions::default()
            };
            decide_isomorphism(&a.algebra, &pa, &b.algebra, &pb, &opts)
        })();
        match r {
            Ok(rep) => {
                let v = match rep.verdict {
                    Verdict::Isomorphic => GorVerdict::Isomorphic,
                    Verdict::NotIsomorphic => GorVerdict::NotIsomorphic,
                    Verdict::Unknown => GorVerdict::Unknown,
                };
                unsafe { *out = v };
                GorStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Message for the last failure on this thread, or null. Free with
/// [`gor_string_free`].
#[no_mangle]
pub extern "C" fn gor_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map_or(ptr::null_mut(), |c| c.clone().into_raw())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn gor_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: allocated by CString::into_raw.
        drop(unsafe { CString::from_raw(s) });
    }
}
