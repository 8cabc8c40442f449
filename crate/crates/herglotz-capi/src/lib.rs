//! C ABI over the `herglotz` crate.
//!
//! One opaque handle per parsed model, one per spectral sample; every
//! function returns a status code and writes results through out
//! pointers. The canonical header lives at `include/herglotz.h` and is
//! kept in sync by the C smoke test in `tests/`.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;

use herglotz::{
    averaging, config::Model, oracle_density, parse_config, Backend, Error, HerglotzTriple,
    SpectralSample, SweepConfig, Tolerances,
};

/// Status codes mirrored in the C header.
pub const HERGLOTZ_OK: i32 = 0;
pub const HERGLOTZ_NULL_POINTER: i32 = 1;
pub const HERGLOTZ_INVALID_CONFIG: i32 = 2;
pub const HERGLOTZ_DOMAIN_ERROR: i32 = 3;
pub const HERGLOTZ_NUMERIC_ERROR: i32 = 4;
pub const HERGLOTZ_BAD_ARGUMENT: i32 = 5;
pub const HERGLOTZ_PANIC: i32 = 6;

/// Opaque: a validated model plus its Herglotz function.
pub struct HerglotzModel {
    model: Model,
    h: HerglotzTriple,
}

/// Opaque: the atoms of one singular spectral sample.
pub struct HerglotzSampleHandle {
    sample: SpectralSample,
}

fn status_of(err: &Error) -> i32 {
    match err {
        Error::NotUpperHalfPlane { .. }
        | Error::InSupport { .. }
        | Error::NearEigenvalue { .. }
        | Error::Pole
        | Error::NegativeCoupling { .. }
        | Error::BackendMismatch
        | Error::ZeroAlpha
        | Error::NotAtomic => HERGLOTZ_DOMAIN_ERROR,
        Error::EmptyWindow { .. }
        | Error::ZeroCount { .. }
        | Error::BadSchedule { .. }
        | Error::NonFinite { .. } => HERGLOTZ_BAD_ARGUMENT,
        _ => HERGLOTZ_NUMERIC_ERROR,
    }
}

fn guarded<F: FnOnce() -> i32>(body: F) -> i32 {
    catch_unwind(AssertUnwindSafe(body)).unwrap_or(HERGLOTZ_PANIC)
}

fn backend_from(code: i32) -> Option<Backend> {
    match code {
        0 => Some(Backend::RootFinding),
        1 => Some(Backend::Secular),
        _ => None,
    }
}

/// Static name for a status code; never needs freeing.
#[no_mangle]
pub extern "C" fn herglotz_status_name(status: i32) -> *const c_char {
    let name: &'static [u8] = match status {
        HERGLOTZ_OK => b"ok\0",
        HERGLOTZ_NULL_POINTER => b"null pointer\0",
        HERGLOTZ_INVALID_CONFIG => b"invalid config\0",
        HERGLOTZ_DOMAIN_ERROR => b"domain error\0",
        HERGLOTZ_NUMERIC_ERROR => b"numeric error\0",
        HERGLOTZ_BAD_ARGUMENT => b"bad argument\0",
        HERGLOTZ_PANIC => b"panic\0",
        _ => b"unknown status\0",
    };
    name.as_ptr() as *const c_char
}

/// Library version; static, never freed.
#[no_mangle]
pub extern "C" fn herglotz_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Parses a JSON model description (same schema as the CLI accepts) and
/// returns a new handle through `out`. Free with [`herglotz_model_free`].
///
/// # Safety
/// `json` must point to a NUL-terminated string and `out` to writable
/// storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn herglotz_model_parse_json(
    json: *const c_char,
    out: *mut *mut HerglotzModel,
) -> i32 {
    if json.is_null() || out.is_null() {
        return HERGLOTZ_NULL_POINTER;
    }
    guarded(|| {
        let text = match CStr::from_ptr(json).to_str() {
            Ok(t) => t,
            Err(_) => return HERGLOTZ_INVALID_CONFIG,
        };
        let model = match parse_config(text).and_then(|cfg| cfg.build()) {
            Ok(m) => m,
            Err(_) => return HERGLOTZ_INVALID_CONFIG,
        };
        let h = match model.herglotz() {
            Ok(h) => h,
            Err(_) => return HERGLOTZ_INVALID_CONFIG,
        };
        *out = Box::into_raw(Box::new(HerglotzModel { model, h }));
        HERGLOTZ_OK
    })
}

/// Frees a model handle; a null pointer is a no-op.
///
/// # Safety
/// `model` must come from [`herglotz_model_parse_json`] and not be freed
/// twice.
#[no_mangle]
pub unsafe extern "C" fn herglotz_model_free(model: *mut HerglotzModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Evaluates `h(z)` for `Im z > 0`.
///
/// # Safety
/// `model` must be a live handle; `out_re`/`out_im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn herglotz_eval(
    model: *const HerglotzModel,
    z_re: f64,
    z_im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> i32 {
    if model.is_null() || out_re.is_null() || out_im.is_null() {
        return HERGLOTZ_NULL_POINTER;
    }
    guarded(|| match (*model).h.eval(Complex64::new(z_re, z_im)) {
        Ok(v) => {
            *out_re = v.re;
            *out_im = v.im;
            HERGLOTZ_OK
        }
        Err(e) => status_of(&e),
    })
}

/// Evaluates `1/(r - h(z))` for `Im z > 0`.
///
/// # Safety
/// As [`herglotz_eval`].
#[no_mangle]
pub unsafe extern "C" fn herglotz_transform_eval(
    model: *const HerglotzModel,
    r: f64,
    z_re: f64,
    z_im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> i32 {
    if model.is_null() || out_re.is_null() || out_im.is_null() {
        return HERGLOTZ_NULL_POINTER;
    }
    guarded(
        || match (*model).h.transform(r).eval(Complex64::new(z_re, z_im)) {
            Ok(v) => {
                *out_re = v.re;
                *out_im = v.im;
                HERGLOTZ_OK
            }
            Err(e) => status_of(&e),
        },
    )
}

/// Solves `h(lambda) = r`: the atoms of the singular measure of
/// `1/(r - h)`. The returned handle is freed with
/// [`herglotz_sample_free`].
///
/// # Safety
/// `model` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn herglotz_solve(
    model: *const HerglotzModel,
    r: f64,
    out: *mut *mut HerglotzSampleHandle,
) -> i32 {
    if model.is_null() || out.is_null() {
        return HERGLOTZ_NULL_POINTER;
    }
    guarded(|| match (*model).h.solve_equals(r) {
        Ok(sample) => {
            *out = Box::into_raw(Box::new(HerglotzSampleHandle { sample }));
            HERGLOTZ_OK
        }
        Err(e) => status_of(&e),
    })
}

/// Number of atoms in a sample; zero for a null handle.
///
/// # Safety
/// `sample` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn herglotz_sample_len(sample: *const HerglotzSampleHandle) -> usize {
    if sample.is_null() {
        return 0;
    }
    (*sample).sample.atoms().len()
}

/// Position of atom `index`.
///
/// # Safety
/// `sample` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn herglotz_sample_position(
    sample: *const HerglotzSampleHandle,
    index: usize,
    out: *mut f64,
) -> i32 {
    if sample.is_null() || out.is_null() {
        return HERGLOTZ_NULL_POINTER;
    }
    match (*sample).sample.atoms().get(index) {
        Some(atom) => {
            *out = atom.position;
            HERGLOTZ_OK
        }
        None => HERGLOTZ_BAD_ARGUMENT,
    }
}

/// Mass of atom `index`.
///
/// # Safety
/// As [`herglotz_sample_position`].
#[no_mangle]
pub unsafe extern "C" fn herglotz_sample_mass(
    sample: *const HerglotzSampleHandle,
    index: usize,
    out: *mut f64,
) -> i32 {
    if sample.is_null() || out.is_null() {
        return HERGLOTZ_NULL_POINTER;
    }
    match (*sample).sample.atoms().get(index) {
        Some(atom) => {
            *out = atom.mass;
            HERGLOTZ_OK
        }
        None => HERGLOTZ_BAD_ARGUMENT,
    }
}

/// Frees a sample handle; a null pointer is a no-op.
///
/// # Safety
/// `sample` must come from [`herglotz_solve`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn herglotz_sample_free(sample: *mut HerglotzSampleHandle) {
    if !sample.is_null() {
        drop(Box::from_raw(sample));
    }
}

/// The analytic averaged-density indicator at `lambda` (0 or 1); a
/// domain error when `lambda` lies in the closed support.
///
/// # Safety
/// `model` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn herglotz_oracle_density(
    model: *const HerglotzModel,
    lambda: f64,
    out: *mut f64,
) -> i32 {
    if model.is_null() || out.is_null() {
        return HERGLOTZ_NULL_POINTER;
    }
    guarded(|| match oracle_density(&(*model).h, lambda) {
        Ok(v) => {
            *out = v;
            HERGLOTZ_OK
        }
        Err(e) => status_of(&e),
    })
}

/// Writes up to `cap` jump points into `buf` and the total count into
/// `out_len`. Call with `cap = 0` (and `buf` possibly null) to query the
/// count first.
///
/// # Safety
/// `model` must be a live handle; `buf` must have room for `cap` values
/// when `cap > 0`; `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn herglotz_jump_points(
    model: *const HerglotzModel,
    buf: *mut f64,
    cap: usize,
    out_len: *mut usize,
) -> i32 {
    if model.is_null() || out_len.is_null() || (cap > 0 && buf.is_null()) {
        return HERGLOTZ_NULL_POINTER;
    }
    guarded(|| match averaging::jump_points(&(*model).h) {
        Ok(points) => {
            *out_len = points.len();
            for (i, &p) in points.iter().take(cap).enumerate() {
                *buf.add(i) = p;
            }
            HERGLOTZ_OK
        }
        Err(e) => status_of(&e),
    })
}

/// The default verification window: one unit of slack around the extreme
/// jump points.
///
/// # Safety
/// `model` must be a live handle; `out_lo`/`out_hi` writable.
#[no_mangle]
pub unsafe extern "C" fn herglotz_default_window(
    model: *const HerglotzModel,
    out_lo: *mut f64,
    out_hi: *mut f64,
) -> i32 {
    if model.is_null() || out_lo.is_null() || out_hi.is_null() {
        return HERGLOTZ_NULL_POINTER;
    }
    guarded(|| match averaging::default_window(&(*model).h) {
        Ok((lo, hi)) => {
            *out_lo = lo;
            *out_hi = hi;
            HERGLOTZ_OK
        }
        Err(e) => status_of(&e),
    })
}

/// Averages the singular measures of `1/(r - h)` over `r` in `[0, 1]`
/// with `n_r` midpoint samples and writes the binned density (length
/// `n_bins`, bins half-open over `[lo, hi)`) into caller storage.
/// `backend` is 0 for root-finding, 1 for the secular solver.
///
/// # Safety
/// `model` must be a live handle; `out_values` must have room for
/// `n_bins` values.
#[no_mangle]
pub unsafe extern "C" fn herglotz_sweep(
    model: *const HerglotzModel,
    n_r: usize,
    lo: f64,
    hi: f64,
    n_bins: usize,
    backend: i32,
    out_values: *mut f64,
) -> i32 {
    if model.is_null() || out_values.is_null() {
        return HERGLOTZ_NULL_POINTER;
    }
    guarded(|| {
        let backend = match backend_from(backend) {
            Some(b) => b,
            None => return HERGLOTZ_BAD_ARGUMENT,
        };
        let cfg = match SweepConfig::new(n_r, (lo, hi), n_bins, backend) {
            Ok(c) => c,
            Err(e) => return status_of(&e),
        };
        match averaging::sweep(&(*model).h, &cfg) {
            Ok(grid) => {
                ptr::copy_nonoverlapping(grid.values().as_ptr(), out_values, n_bins);
                HERGLOTZ_OK
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Runs the full verification: sweep, comparison against the analytic
/// density and backend cross-check. Writes the three deviation metrics
/// and sets `out_pass` to 1 when all tolerances hold. A failing verdict
/// is still `HERGLOTZ_OK`; the status only reports execution problems.
///
/// # Safety
/// `model` must be a live handle; every out pointer writable.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn herglotz_check(
    model: *const HerglotzModel,
    n_r: usize,
    lo: f64,
    hi: f64,
    n_bins: usize,
    backend: i32,
    tol_sup: f64,
    tol_l1: f64,
    tol_mass: f64,
    out_sup: *mut f64,
    out_l1: *mut f64,
    out_mass: *mut f64,
    out_pass: *mut i32,
) -> i32 {
    if model.is_null()
        || out_sup.is_null()
        || out_l1.is_null()
        || out_mass.is_null()
        || out_pass.is_null()
    {
        return HERGLOTZ_NULL_POINTER;
    }
    guarded(|| {
        let backend = match backend_from(backend) {
            Some(b) => b,
            None => return HERGLOTZ_BAD_ARGUMENT,
        };
        let cfg = match SweepConfig::new(n_r, (lo, hi), n_bins, backend) {
            Ok(c) => c,
            Err(e) => return status_of(&e),
        };
        let tol = Tolerances {
            sup: tol_sup,
            l1: tol_l1,
            mass: tol_mass,
        };
        let handle = &*model;
        let verdict = match (handle.model.rank_one(), backend) {
            (Some(m), Backend::Secular) => averaging::theorem_check_model(m, &cfg, &tol),
            _ => averaging::theorem_check(&handle.h, &cfg, &tol),
        };
        match verdict {
            Ok(v) => {
                *out_sup = v.report.sup_error_off_jumps;
                *out_l1 = v.report.l1_error;
                *out_mass = v.report.mass_check;
                *out_pass = v.pass as i32;
                HERGLOTZ_OK
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Duplicates a status name into caller-owned memory, mainly so bindings
/// that cannot keep Rust statics alive have something to free; release
/// with [`herglotz_string_free`].
#[no_mangle]
pub extern "C" fn herglotz_status_name_owned(status: i32) -> *mut c_char {
    let s = unsafe { CStr::from_ptr(herglotz_status_name(status)) };
    CString::new(s.to_bytes()).map_or(ptr::null_mut(), CString::into_raw)
}

/// Frees a string returned by [`herglotz_status_name_owned`].
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn herglotz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
