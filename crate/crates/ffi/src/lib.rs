//! C ABI over `grkappa`.
//!
//! Objects cross the boundary as opaque handles that the caller releases
//! with the matching `*_free` function. Every fallible call returns a
//! [`GrkStatus`]; on failure the message is available from
//! [`grk_last_error_message`] on the same thread. Strings returned through
//! out-pointers are owned by the caller and released with
//! [`grk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use grkappa::decomp::{decomposition_matrix, Block, DecompositionMatrix, Method};
use grkappa::{Error, Multipartition, Params, RootElement};

/// Result codes of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Inconsistent = 5,
    OutOfRange = 6,
    Internal = 7,
}

/// Algorithm used by [`grk_decomposition_matrix`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrkMethod {
    Llt = 0,
    Bar = 1,
    Extremal = 2,
}

/// Opaque parameter set (e, kappa).
pub struct GrkParams(Params);

/// Opaque graded decomposition matrix of one block.
pub struct GrkMatrix(DecompositionMatrix);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(err: &Error) -> GrkStatus {
    match err {
        Error::Parse(_) => GrkStatus::Parse,
        Error::Inconsistent(_) => GrkStatus::Inconsistent,
        Error::Io(_) | Error::Json(_) => GrkStatus::Internal,
        _ => GrkStatus::Domain,
    }
}

/// Runs `f`, records any error or panic, and maps it to a status.
fn guard(f: impl FnOnce() -> Result<(), (GrkStatus, String)>) -> GrkStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GrkStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            GrkStatus::Internal
        }
    }
}

fn lib<T>(r: grkappa::Result<T>) -> Result<T, (GrkStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (GrkStatus, String) {
    (GrkStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (GrkStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (GrkStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), (GrkStatus, String)> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

unsafe fn params_ref<'a>(p: *const GrkParams) -> Result<&'a Params, (GrkStatus, String)> {
    p.as_ref().map(|p| &p.0).ok_or_else(|| null("params"))
}

unsafe fn matrix_ref<'a>(m: *const GrkMatrix) -> Result<&'a DecompositionMatrix, (GrkStatus, String)> {
    m.as_ref().map(|m| &m.0).ok_or_else(|| null("matrix"))
}

unsafe fn parse_mu(params: &Params, mu: *const c_char) -> Result<Multipartition, (GrkStatus, String)> {
    let mu: Multipartition = lib(read_str(mu, "mu")?.parse())?;
    if mu.level() != params.level() {
        return Err((GrkStatus::Domain, format!("{mu} has level {}, expected {}", mu.level(), params.level())));
    }
    Ok(mu)
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn grk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn grk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn grk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates parameters from `e` and `kappa_len` residues.
///
/// # Safety
/// `kappa` must point to `kappa_len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn grk_params_new(
    e: u32,
    kappa: *const i64,
    kappa_len: usize,
    out: *mut *mut GrkParams,
) -> GrkStatus {
    guard(|| {
        if kappa.is_null() {
            return Err(null("kappa"));
        }
        let kappa = std::slice::from_raw_parts(kappa, kappa_len);
        let params = lib(Params::new(e, kappa))?;
        write_out(out, Box::into_raw(Box::new(GrkParams(params))), "out")
    })
}

/// # Safety
/// `p` must come from [`grk_params_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn grk_params_free(p: *mut GrkParams) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Writes whether `mu` (text form, e.g. "2,1|0") is restricted.
///
/// # Safety
/// Pointers must be valid; `mu` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn grk_is_restricted(params: *const GrkParams, mu: *const c_char, out: *mut bool) -> GrkStatus {
    guard(|| {
        let params = params_ref(params)?;
        let mu = parse_mu(params, mu)?;
        write_out(out, grkappa::crystal::is_restricted(&mu, params), "out")
    })
}

/// Writes the Mullineux image of a level-one restricted partition.
///
/// # Safety
/// Pointers must be valid; `mu` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn grk_mullineux(params: *const GrkParams, mu: *const c_char, out: *mut *mut c_char) -> GrkStatus {
    guard(|| {
        let params = params_ref(params)?;
        let mu = parse_mu(params, mu)?;
        let image = lib(grkappa::crystal::mullineux(&mu, params))?;
        write_out(out, to_c_string(image.to_string()), "out")
    })
}

/// Writes the graded Specht character of `mu` as JSON.
///
/// # Safety
/// Pointers must be valid; `mu` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn grk_specht_character_json(
    params: *const GrkParams,
    mu: *const c_char,
    out: *mut *mut c_char,
) -> GrkStatus {
    guard(|| {
        let params = params_ref(params)?;
        let mu = parse_mu(params, mu)?;
        let ch = lib(grkappa::specht_qcharacter(&mu, params))?;
        let json = serde_json::to_string(&ch).map_err(|e| (GrkStatus::Internal, e.to_string()))?;
        write_out(out, to_c_string(json), "out")
    })
}

/// Computes the graded decomposition matrix of the block with content
/// `alpha` (e.g. "0:2,1:1").
///
/// # Safety
/// Pointers must be valid; `alpha` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn grk_decomposition_matrix(
    params: *const GrkParams,
    alpha: *const c_char,
    method: GrkMethod,
    out: *mut *mut GrkMatrix,
) -> GrkStatus {
    guard(|| {
        let params = params_ref(params)?;
        let alpha = lib(RootElement::parse(read_str(alpha, "alpha")?, params.e))?;
        let block = lib(Block::new(params, &alpha))?;
        let method = match method {
            GrkMethod::Llt => Method::Llt,
            GrkMethod::Bar => Method::Bar,
            GrkMethod::Extremal => Method::Extremal,
        };
        let m = lib(decomposition_matrix(&block, method))?;
        write_out(out, Box::into_raw(Box::new(GrkMatrix(m))), "out")
    })
}

/// # Safety
/// `m` must come from [`grk_decomposition_matrix`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn grk_matrix_free(m: *mut GrkMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Number of rows (all multipartitions of the block); 0 for null.
///
/// # Safety
/// `m` must be null or a live matrix handle.
#[no_mangle]
pub unsafe extern "C" fn grk_matrix_rows(m: *const GrkMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.rows.len())
}

/// Number of columns (restricted multipartitions); 0 for null.
///
/// # Safety
/// `m` must be null or a live matrix handle.
#[no_mangle]
pub unsafe extern "C" fn grk_matrix_cols(m: *const GrkMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.cols.len())
}

/// Writes the label of row `r`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn grk_matrix_row_label(m: *const GrkMatrix, r: usize, out: *mut *mut c_char) -> GrkStatus {
    guard(|| {
        let m = matrix_ref(m)?;
        let mu = m.rows.get(r).ok_or((GrkStatus::OutOfRange, format!("row {r} out of range")))?;
        write_out(out, to_c_string(mu.to_string()), "out")
    })
}

/// Writes the label of column `c`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn grk_matrix_col_label(m: *const GrkMatrix, c: usize, out: *mut *mut c_char) -> GrkStatus {
    guard(|| {
        let m = matrix_ref(m)?;
        let nu = m.cols.get(c).ok_or((GrkStatus::OutOfRange, format!("column {c} out of range")))?;
        write_out(out, to_c_string(nu.to_string()), "out")
    })
}

/// Writes entry (r, c) as a Laurent polynomial in text form.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn grk_matrix_entry(m: *const GrkMatrix, r: usize, c: usize, out: *mut *mut c_char) -> GrkStatus {
    guard(|| {
        let m = matrix_ref(m)?;
        match (m.rows.get(r), m.cols.get(c)) {
            (Some(mu), Some(nu)) => write_out(out, to_c_string(m.get(mu, nu).to_string()), "out"),
            _ => Err((GrkStatus::OutOfRange, format!("entry ({r}, {c}) out of range"))),
        }
    })
}

/// Writes the whole matrix as JSON.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn grk_matrix_to_json(m: *const GrkMatrix, out: *mut *mut c_char) -> GrkStatus {
    guard(|| {
        let m = matrix_ref(m)?;
        write_out(out, to_c_string(m.to_json().to_string()), "out")
    })
}
