//! C ABI for the multifractal analysis toolkit.
//!
//! Conventions:
//! - every fallible call returns an [`MfbStatus`]; on non-OK the thread-local
//!   message retrieved by [`mfb_last_error`] describes the failure;
//! - heap objects are returned through opaque handles (`MfbPath`, `MfbTau`)
//!   and must be released with the matching `_free` function;
//! - array outputs are caller-allocated; length-query functions tell the
//!   caller how much to allocate;
//! - unattained spectrum values are `-INFINITY`.
//!
//! The header `include/mfbounds.h` is generated by cbindgen at build time.

use std::cell::RefCell;
use std::os::raw::{c_char, c_double, c_ulonglong};

use mfbounds::error::Error;
use mfbounds::estimate::{
    modified_partition_function, partition_function, scaling_function, MomentGrid, ScaleGrid,
    ScalingFunctionEstimate,
};
use mfbounds::sim::{generate, ProcessSpec, SamplePath, Seed};
use mfbounds::spectrum::{
    h_plus_from_factor_tau, hsssi_bounds, ig_abs_moment, legendre_spectrum,
    support_bounds_from_tau, theoretical_tau, ScalingFunction, TauFamily,
};

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(message: impl Into<String>) {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = message.into());
}

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MfbStatus {
    Ok = 0,
    /// Invalid parameters or arguments.
    Invalid = 1,
    /// Numeric or runtime failure.
    Numeric = 2,
    /// A required pointer was null.
    NullPointer = 3,
}

fn status_of(err: &Error) -> MfbStatus {
    if err.is_validation() {
        MfbStatus::Invalid
    } else {
        MfbStatus::Numeric
    }
}

/// Copy the last error message on this thread into `buf` (NUL-terminated,
/// truncated to `cap` bytes). Returns the full message length in bytes.
///
/// # Safety
/// `buf` must point to at least `cap` writable bytes, or be null (then only
/// the length is returned).
#[no_mangle]
pub unsafe extern "C" fn mfb_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let message = slot.borrow();
        let bytes = message.as_bytes();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap - 1);
            std::ptr::copy_nonoverlapping(bytes.as_ptr(), buf.cast::<u8>(), n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Opaque sample path handle.
pub struct MfbPath {
    inner: SamplePath,
}

/// Opaque scaling-function estimate handle.
pub struct MfbTau {
    inner: ScalingFunctionEstimate,
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) -> MfbStatus {
    if out.is_null() {
        set_error("output handle pointer is null");
        return MfbStatus::NullPointer;
    }
    *out = Box::into_raw(Box::new(value));
    MfbStatus::Ok
}

/// Simulate a path from a JSON process specification (same schema as the
/// CSV sidecars), e.g. `{"family":"mrw","lambda2":0.025,"horizon":1024.0}`.
///
/// # Safety
/// `spec_json` must be a NUL-terminated UTF-8 string; `out` must be a valid
/// pointer. The returned handle must be freed with [`mfb_path_free`].
#[no_mangle]
pub unsafe extern "C" fn mfb_path_simulate_json(
    spec_json: *const c_char,
    n: usize,
    horizon: c_double,
    seed: c_ulonglong,
    out: *mut *mut MfbPath,
) -> MfbStatus {
    if spec_json.is_null() {
        set_error("spec_json is null");
        return MfbStatus::NullPointer;
    }
    let text = match std::ffi::CStr::from_ptr(spec_json).to_str() {
        Ok(t) => t,
        Err(_) => {
            set_error("spec_json is not valid UTF-8");
            return MfbStatus::Invalid;
        }
    };
    let spec: ProcessSpec = match serde_json::from_str(text) {
        Ok(s) => s,
        Err(e) => {
            set_error(format!("bad process spec: {e}"));
            return MfbStatus::Invalid;
        }
    };
    match generate(&spec, n, horizon, Seed(seed)) {
        Ok(path) => write_handle(out, MfbPath { inner: path }),
        Err(e) => {
            set_error(e.to_string());
            status_of(&e)
        }
    }
}

/// Simulate standard Brownian motion.
///
/// # Safety
/// `out` must be valid; free the handle with [`mfb_path_free`].
#[no_mangle]
pub unsafe extern "C" fn mfb_path_simulate_bm(
    n: usize,
    horizon: c_double,
    seed: c_ulonglong,
    out: *mut *mut MfbPath,
) -> MfbStatus {
    match generate(&ProcessSpec::Bm, n, horizon, Seed(seed)) {
        Ok(path) => write_handle(out, MfbPath { inner: path }),
        Err(e) => {
            set_error(e.to_string());
            status_of(&e)
        }
    }
}

/// Simulate fractional Brownian motion with Hurst index `hurst`.
///
/// # Safety
/// `out` must be valid; free the handle with [`mfb_path_free`].
#[no_mangle]
pub unsafe extern "C" fn mfb_path_simulate_fbm(
    hurst: c_double,
    n: usize,
    horizon: c_double,
    seed: c_ulonglong,
    out: *mut *mut MfbPath,
) -> MfbStatus {
    match generate(&ProcessSpec::Fbm { hurst }, n, horizon, Seed(seed)) {
        Ok(path) => write_handle(out, MfbPath { inner: path }),
        Err(e) => {
            set_error(e.to_string());
            status_of(&e)
        }
    }
}

/// Simulate an alpha-stable Levy motion.
///
/// # Safety
/// `out` must be valid; free the handle with [`mfb_path_free`].
#[no_mangle]
pub unsafe extern "C" fn mfb_path_simulate_stable(
    alpha: c_double,
    sigma: c_double,
    beta: c_double,
    mu: c_double,
    n: usize,
    horizon: c_double,
    seed: c_ulonglong,
    out: *mut *mut MfbPath,
) -> MfbStatus {
    let spec = ProcessSpec::StableLevy {
        alpha,
        sigma,
        beta,
        mu,
    };
    match generate(&spec, n, horizon, Seed(seed)) {
        Ok(path) => write_handle(out, MfbPath { inner: path }),
        Err(e) => {
            set_error(e.to_string());
            status_of(&e)
        }
    }
}

/// Number of samples in the path (n + 1).
///
/// # Safety
/// `path` must be a live handle from a `mfb_path_simulate_*` call.
#[no_mangle]
pub unsafe extern "C" fn mfb_path_len(path: *const MfbPath) -> usize {
    if path.is_null() {
        return 0;
    }
    (*path).inner.len()
}

/// Copy times and/or values into caller buffers of length [`mfb_path_len`].
/// Either destination may be null to skip it.
///
/// # Safety
/// Non-null destinations must have room for `mfb_path_len(path)` doubles.
#[no_mangle]
pub unsafe extern "C" fn mfb_path_copy(
    path: *const MfbPath,
    times_out: *mut c_double,
    values_out: *mut c_double,
) -> MfbStatus {
    if path.is_null() {
        set_error("path handle is null");
        return MfbStatus::NullPointer;
    }
    let p = &(*path).inner;
    if !times_out.is_null() {
        std::ptr::copy_nonoverlapping(p.times().as_ptr(), times_out, p.len());
    }
    if !values_out.is_null() {
        std::ptr::copy_nonoverlapping(p.values().as_ptr(), values_out, p.len());
    }
    MfbStatus::Ok
}

/// Release a path handle.
///
/// # Safety
/// `path` must come from a `mfb_path_simulate_*` call and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn mfb_path_free(path: *mut MfbPath) {
    if !path.is_null() {
        drop(Box::from_raw(path));
    }
}

/// Estimate the scaling function of `path` on the given moment orders and
/// lags. `m = 0` selects the standard partition function; `m >= 1` the
/// modified (max of m increments) variant.
///
/// # Safety
/// `qs`/`deltas` must point to `nq`/`nd` doubles; `out` must be valid. Free
/// the result with [`mfb_tau_free`].
#[no_mangle]
pub unsafe extern "C" fn mfb_scaling_estimate(
    path: *const MfbPath,
    qs: *const c_double,
    nq: usize,
    deltas: *const c_double,
    nd: usize,
    m: u32,
    out: *mut *mut MfbTau,
) -> MfbStatus {
    if path.is_null() || qs.is_null() || deltas.is_null() {
        set_error("null pointer argument");
        return MfbStatus::NullPointer;
    }
    let qs = std::slice::from_raw_parts(qs, nq).to_vec();
    let deltas = std::slice::from_raw_parts(deltas, nd).to_vec();
    let result = (|| {
        let qs = MomentGrid::new(qs)?;
        let deltas = ScaleGrid::new(deltas)?;
        let table = if m == 0 {
            partition_function(&(*path).inner, &qs, &deltas)?
        } else {
            modified_partition_function(&(*path).inner, &qs, &deltas, m)?
        };
        scaling_function(&table)
    })();
    match result {
        Ok(est) => write_handle(out, MfbTau { inner: est }),
        Err(e) => {
            set_error(e.to_string());
            status_of(&e)
        }
    }
}

/// Number of moment orders in the estimate.
///
/// # Safety
/// `tau` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn mfb_tau_len(tau: *const MfbTau) -> usize {
    if tau.is_null() {
        return 0;
    }
    (*tau).inner.qs.len()
}

/// Copy the estimate columns into caller buffers of length [`mfb_tau_len`].
/// Any destination may be null to skip that column.
///
/// # Safety
/// Non-null destinations must have room for `mfb_tau_len(tau)` doubles.
#[no_mangle]
pub unsafe extern "C" fn mfb_tau_copy(
    tau: *const MfbTau,
    qs_out: *mut c_double,
    tau_out: *mut c_double,
    r2_out: *mut c_double,
) -> MfbStatus {
    if tau.is_null() {
        set_error("tau handle is null");
        return MfbStatus::NullPointer;
    }
    let est = &(*tau).inner;
    let n = est.qs.len();
    if !qs_out.is_null() {
        std::ptr::copy_nonoverlapping(est.qs.qs().as_ptr(), qs_out, n);
    }
    if !tau_out.is_null() {
        std::ptr::copy_nonoverlapping(est.tau.as_ptr(), tau_out, n);
    }
    if !r2_out.is_null() {
        std::ptr::copy_nonoverlapping(est.r2.as_ptr(), r2_out, n);
    }
    MfbStatus::Ok
}

/// Release a scaling-estimate handle.
///
/// # Safety
/// `tau` must come from [`mfb_scaling_estimate`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn mfb_tau_free(tau: *mut MfbTau) {
    if !tau.is_null() {
        drop(Box::from_raw(tau));
    }
}

/// Closed-form scaling-function families. Parameter slots:
/// SelfSimilar(hurst, -), Stable(alpha, -), Lfsm(hurst, alpha),
/// Levy(alpha, -), Cascade(lambda2, -), CascadeLinearized(lambda2, -),
/// Mrw(lambda2, -).
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MfbTauFamily {
    SelfSimilar = 0,
    Stable = 1,
    Lfsm = 2,
    Levy = 3,
    Cascade = 4,
    CascadeLinearized = 5,
    Mrw = 6,
}

fn family_of(family: MfbTauFamily, p1: f64, p2: f64) -> TauFamily {
    match family {
        MfbTauFamily::SelfSimilar => TauFamily::SelfSimilar { hurst: p1 },
        MfbTauFamily::Stable => TauFamily::StableAsym { alpha: p1 },
        MfbTauFamily::Lfsm => TauFamily::LfsmAsym {
            hurst: p1,
            alpha: p2,
        },
        MfbTauFamily::Levy => TauFamily::LevyAsym { alpha: p1 },
        MfbTauFamily::Cascade => TauFamily::Cascade { lambda2: p1 },
        MfbTauFamily::CascadeLinearized => TauFamily::CascadeLinearized { lambda2: p1 },
        MfbTauFamily::Mrw => TauFamily::Mrw { lambda2: p1 },
    }
}

/// Evaluate the closed-form scaling function at `q`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mfb_theoretical_tau_eval(
    family: MfbTauFamily,
    p1: c_double,
    p2: c_double,
    q: c_double,
    out: *mut c_double,
) -> MfbStatus {
    if out.is_null() {
        set_error("out pointer is null");
        return MfbStatus::NullPointer;
    }
    match theoretical_tau(family_of(family, p1, p2)) {
        Ok(tau) => {
            *out = tau.eval(q);
            MfbStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            status_of(&e)
        }
    }
}

/// Spectrum-support bounds. Absent bounds are reported as NaN.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct MfbBounds {
    pub h_minus: c_double,
    pub h_tilde_plus: c_double,
    pub h_plus: c_double,
    pub hsssi_low: c_double,
    pub hsssi_high: c_double,
    /// 1 when every positive moment is finite (trivial spectrum), else 0.
    pub trivial: i32,
}

/// Compute support bounds for a closed-form family. Pass NaN for
/// `q_lower`/`q_upper` to keep the family's natural moment range.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mfb_support_bounds(
    family: MfbTauFamily,
    p1: c_double,
    p2: c_double,
    q_lower: c_double,
    q_upper: c_double,
    out: *mut MfbBounds,
) -> MfbStatus {
    if out.is_null() {
        set_error("out pointer is null");
        return MfbStatus::NullPointer;
    }
    let tau_family = family_of(family, p1, p2);
    let tau = match theoretical_tau(tau_family) {
        Ok(t) => t,
        Err(e) => {
            set_error(e.to_string());
            return status_of(&e);
        }
    };
    let (mut lo, mut hi) = tau.moment_range();
    if !q_lower.is_nan() {
        lo = q_lower;
    }
    if !q_upper.is_nan() {
        hi = q_upper;
    }
    let tau = tau.with_moment_range(lo, hi);
    let bounds = support_bounds_from_tau(&tau);
    let h_plus = match tau_family {
        TauFamily::Cascade { .. } | TauFamily::CascadeLinearized { .. } | TauFamily::Mrw { .. } => {
            h_plus_from_factor_tau(&tau.clone().with_moment_range(f64::NEG_INFINITY, hi))
        }
        _ => None,
    };
    let hsssi = match tau_family {
        TauFamily::SelfSimilar { hurst } => hsssi_bounds(hurst, hi).ok(),
        TauFamily::StableAsym { alpha } => hsssi_bounds(1.0 / alpha, alpha).ok(),
        TauFamily::LfsmAsym { hurst, alpha } => hsssi_bounds(hurst, alpha).ok(),
        _ => None,
    };
    *out = MfbBounds {
        h_minus: bounds.h_minus.unwrap_or(f64::NAN),
        h_tilde_plus: bounds.h_tilde_plus.unwrap_or(f64::NAN),
        h_plus: h_plus.unwrap_or(f64::NAN),
        hsssi_low: hsssi.map_or(f64::NAN, |b| b.low),
        hsssi_high: hsssi.map_or(f64::NAN, |b| b.high),
        trivial: hsssi.is_some_and(|b| b.trivial) as i32,
    };
    MfbStatus::Ok
}

/// Numeric Legendre spectrum of a tabulated scaling function:
/// `d[i] = inf_{q in [q_min, q_max]} (h[i] q - tau(q) + 1)`, with
/// `-INFINITY` marking unattained exponents.
///
/// # Safety
/// `qs`/`tau` must hold `n` doubles, `hs` and `d_out` must hold `nh` doubles.
#[no_mangle]
pub unsafe extern "C" fn mfb_legendre_spectrum(
    qs: *const c_double,
    tau: *const c_double,
    n: usize,
    hs: *const c_double,
    nh: usize,
    q_min: c_double,
    q_max: c_double,
    q_step: c_double,
    d_out: *mut c_double,
) -> MfbStatus {
    if qs.is_null() || tau.is_null() || hs.is_null() || d_out.is_null() {
        set_error("null pointer argument");
        return MfbStatus::NullPointer;
    }
    let qs = std::slice::from_raw_parts(qs, n).to_vec();
    let tau_values = std::slice::from_raw_parts(tau, n).to_vec();
    let hs = std::slice::from_raw_parts(hs, nh);
    let result = (|| {
        let span = (
            qs.first().copied().unwrap_or(0.0),
            qs.last().copied().unwrap_or(0.0),
        );
        let tabulated = ScalingFunction::tabulated(qs, tau_values, span)?;
        legendre_spectrum(&tabulated, hs, (q_min, q_max), q_step)
    })();
    match result {
        Ok(curve) => {
            std::ptr::copy_nonoverlapping(curve.d.as_ptr(), d_out, nh);
            MfbStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            status_of(&e)
        }
    }
}

/// Absolute moment `E|X(1)|^q` of the IG(delta, lambda) law by quadrature.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mfb_ig_abs_moment(
    q: c_double,
    delta: c_double,
    lambda: c_double,
    out: *mut c_double,
) -> MfbStatus {
    if out.is_null() {
        set_error("out pointer is null");
        return MfbStatus::NullPointer;
    }
    match ig_abs_moment(q, delta, lambda) {
        Ok(v) => {
            *out = v;
            MfbStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            status_of(&e)
        }
    }
}
