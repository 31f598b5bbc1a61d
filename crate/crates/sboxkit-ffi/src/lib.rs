//! C ABI for the sboxkit library.
//!
//! Handles are opaque pointers created and freed here; every fallible call
//! returns an [`SbkStatus`] and writes its result through an out-pointer.
//! A human-readable message for the most recent failure on the current
//! thread is available via [`sbk_last_error`].
//!
//! The CLI and the full Rust API remain the primary interfaces; this
//! surface covers building functions (from recipes or raw tables) and
//! reading their headline metrics from other languages.

// Pointer contracts are stated on each function; the usual FFI rules apply
// (valid, correctly-sized buffers; handles freed exactly once).
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::sync::Arc;

use sboxkit::funcrep::Lut;
use sboxkit::gf2n::Field;
use sboxkit::recipe::parse_recipe;
use sboxkit::{spectra, Error};

/// Status code returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SbkStatus {
    Ok = 0,
    /// Malformed input: bad field spec, recipe syntax, table size, range.
    InvalidArgument = 1,
    /// A construction precondition failed (named in the error message).
    ConstructionError = 2,
    /// The operation needs a permutation and the function is not one.
    NotPermutation = 3,
    /// A proved bound was violated; indicates a bug, not a user error.
    BoundViolation = 4,
    InternalError = 5,
    NullPointer = 6,
}

/// Opaque GF(2^n) handle.
pub struct SbkField(Arc<Field>);

/// Opaque function (lookup table) handle.
pub struct SbkFunction(Lut);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn fail(e: Error) -> SbkStatus {
    let status = match &e {
        Error::Field(_) | Error::Recipe { .. } | Error::Format(_) | Error::FieldMismatch(_) => {
            SbkStatus::InvalidArgument
        }
        Error::Construction(_) => SbkStatus::ConstructionError,
        Error::NotPermutation(_) => SbkStatus::NotPermutation,
        Error::BoundViolation(_) => SbkStatus::BoundViolation,
        Error::Io(_) | Error::Internal(_) => SbkStatus::InternalError,
    };
    LAST_ERROR.with(|slot| *slot.borrow_mut() = e.to_string());
    status
}

fn ok() -> SbkStatus {
    LAST_ERROR.with(|slot| slot.borrow_mut().clear());
    SbkStatus::Ok
}

/// Copies the last error message on this thread into `buf` (NUL-terminated,
/// truncated to `cap`). Returns the full message length in bytes, excluding
/// the terminator.
#[no_mangle]
pub unsafe extern "C" fn sbk_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let msg = slot.borrow();
        let bytes = msg.as_bytes();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap - 1);
            std::ptr::copy_nonoverlapping(bytes.as_ptr(), buf as *mut u8, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Builds a validated GF(2^n). Pass `modulus = 0` for the built-in default
/// polynomial and `s = 0` for no designated subfield degree.
#[no_mangle]
pub unsafe extern "C" fn sbk_field_new(
    n: u32,
    modulus: u64,
    s: u32,
    out: *mut *mut SbkField,
) -> SbkStatus {
    if out.is_null() {
        return SbkStatus::NullPointer;
    }
    let modulus = (modulus != 0).then_some(modulus);
    let s = (s != 0).then_some(s);
    match Field::new(n, modulus, s) {
        Ok(f) => {
            *out = Box::into_raw(Box::new(SbkField(Arc::new(f))));
            ok()
        }
        Err(e) => fail(e),
    }
}

/// Parses the textual form `n=<int>[,mod=0x<hex>][,s=<int>]`.
#[no_mangle]
pub unsafe extern "C" fn sbk_field_parse(
    spec: *const c_char,
    out: *mut *mut SbkField,
) -> SbkStatus {
    if spec.is_null() || out.is_null() {
        return SbkStatus::NullPointer;
    }
    let text = match CStr::from_ptr(spec).to_str() {
        Ok(t) => t,
        Err(_) => return fail(Error::Format("field spec is not valid UTF-8".into())),
    };
    match Field::parse_spec(text) {
        Ok(f) => {
            *out = Box::into_raw(Box::new(SbkField(Arc::new(f))));
            ok()
        }
        Err(e) => fail(e),
    }
}

#[no_mangle]
pub unsafe extern "C" fn sbk_field_free(field: *mut SbkField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Extension degree n of the field.
#[no_mangle]
pub unsafe extern "C" fn sbk_field_degree(field: *const SbkField) -> u32 {
    if field.is_null() {
        return 0;
    }
    (*field).0.n()
}

/// Materializes a recipe (e.g. `gold(k=2)` or
/// `piecewise(f=affine_inv(w*x);g=gold(k=2);s=2)`) over the field.
#[no_mangle]
pub unsafe extern "C" fn sbk_function_from_recipe(
    field: *const SbkField,
    recipe: *const c_char,
    out: *mut *mut SbkFunction,
) -> SbkStatus {
    if field.is_null() || recipe.is_null() || out.is_null() {
        return SbkStatus::NullPointer;
    }
    let text = match CStr::from_ptr(recipe).to_str() {
        Ok(t) => t,
        Err(_) => return fail(Error::Format("recipe is not valid UTF-8".into())),
    };
    match parse_recipe(&(*field).0, text) {
        Ok(lut) => {
            *out = Box::into_raw(Box::new(SbkFunction(lut)));
            ok()
        }
        Err(e) => fail(e),
    }
}

/// Wraps a raw lookup table of exactly 2^n entries, each below 2^n.
#[no_mangle]
pub unsafe extern "C" fn sbk_function_from_table(
    field: *const SbkField,
    table: *const u64,
    len: usize,
    out: *mut *mut SbkFunction,
) -> SbkStatus {
    if field.is_null() || table.is_null() || out.is_null() {
        return SbkStatus::NullPointer;
    }
    let entries = std::slice::from_raw_parts(table, len).to_vec();
    match Lut::new((*field).0.clone(), entries) {
        Ok(lut) => {
            *out = Box::into_raw(Box::new(SbkFunction(lut)));
            ok()
        }
        Err(e) => fail(e),
    }
}

#[no_mangle]
pub unsafe extern "C" fn sbk_function_free(func: *mut SbkFunction) {
    if !func.is_null() {
        drop(Box::from_raw(func));
    }
}

/// Number of table entries, 2^n.
#[no_mangle]
pub unsafe extern "C" fn sbk_function_size(func: *const SbkFunction) -> usize {
    if func.is_null() {
        return 0;
    }
    (*func).0.table().len()
}

/// Evaluates the function at one point.
#[no_mangle]
pub unsafe extern "C" fn sbk_function_eval(
    func: *const SbkFunction,
    x: u64,
    out: *mut u64,
) -> SbkStatus {
    if func.is_null() || out.is_null() {
        return SbkStatus::NullPointer;
    }
    let lut = &(*func).0;
    if !lut.field().contains(x) {
        return fail(Error::Field(format!("input {x:#x} out of range")));
    }
    *out = lut.eval(x);
    ok()
}

/// Copies the full table into `buf`; `cap` must be at least 2^n.
#[no_mangle]
pub unsafe extern "C" fn sbk_function_table(
    func: *const SbkFunction,
    buf: *mut u64,
    cap: usize,
) -> SbkStatus {
    if func.is_null() || buf.is_null() {
        return SbkStatus::NullPointer;
    }
    let table = (*func).0.table();
    if cap < table.len() {
        return fail(Error::Format(format!(
            "buffer holds {cap} entries, table needs {}",
            table.len()
        )));
    }
    std::ptr::copy_nonoverlapping(table.as_ptr(), buf, table.len());
    ok()
}

#[no_mangle]
pub unsafe extern "C" fn sbk_is_permutation(
    func: *const SbkFunction,
    out: *mut bool,
) -> SbkStatus {
    if func.is_null() || out.is_null() {
        return SbkStatus::NullPointer;
    }
    *out = (*func).0.is_permutation();
    ok()
}

/// Differential uniformity (max DDT entry over a != 0).
#[no_mangle]
pub unsafe extern "C" fn sbk_differential_uniformity(
    func: *const SbkFunction,
    out: *mut u32,
) -> SbkStatus {
    if func.is_null() || out.is_null() {
        return SbkStatus::NullPointer;
    }
    match spectra::ddt(&(*func).0) {
        Ok(spec) => {
            *out = spec.uniformity;
            ok()
        }
        Err(e) => fail(e),
    }
}

/// Nonlinearity 2^{n-1} - max|W|/2.
#[no_mangle]
pub unsafe extern "C" fn sbk_nonlinearity(func: *const SbkFunction, out: *mut u32) -> SbkStatus {
    if func.is_null() || out.is_null() {
        return SbkStatus::NullPointer;
    }
    match spectra::walsh(&(*func).0) {
        Ok(spec) => {
            *out = spec.nonlinearity;
            ok()
        }
        Err(e) => fail(e),
    }
}

/// Boomerang uniformity; fails with NOT_PERMUTATION for non-bijections.
#[no_mangle]
pub unsafe extern "C" fn sbk_boomerang_uniformity(
    func: *const SbkFunction,
    out: *mut u32,
) -> SbkStatus {
    if func.is_null() || out.is_null() {
        return SbkStatus::NullPointer;
    }
    match spectra::bct(&(*func).0) {
        Ok(spec) => {
            *out = spec.uniformity;
            ok()
        }
        Err(e) => fail(e),
    }
}

/// Algebraic degree (cross-checked ANF and univariate routes).
#[no_mangle]
pub unsafe extern "C" fn sbk_algebraic_degree(
    func: *const SbkFunction,
    out: *mut u32,
) -> SbkStatus {
    if func.is_null() || out.is_null() {
        return SbkStatus::NullPointer;
    }
    match (*func).0.algebraic_degree() {
        Ok(deg) => {
            *out = deg;
            ok()
        }
        Err(e) => fail(e),
    }
}
