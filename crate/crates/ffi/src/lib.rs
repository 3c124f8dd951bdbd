//! C interface to the tqrm library.
//!
//! Every function returns a [`TqrmStatus`]; on failure a message for the
//! calling thread is available from [`tqrm_last_error`]. Panics are caught at
//! the boundary and reported as [`TqrmStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use tqrm::dissipator::{gap_ratio, BathParams, Route};
use tqrm::harness::{run_sweep, write_outputs, SweepConfig};
use tqrm::model::{converge_cutoff, diagonalize_model, CutoffPolicy, EigenSystem, ModelParams};
use tqrm::qops::HilbertSpace;
use tqrm::quantifiers::{evaluate_all, EvaluateOptions, QuantifierReport};
use tqrm::Error;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TqrmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Config = 3,
    CutoffExceeded = 4,
    Numerical = 5,
    Io = 6,
    /// A sweep finished but some grid points failed.
    PartialFailure = 7,
    Panic = 8,
}

/// Hamiltonian parameters; frequencies in units of the chosen reference.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TqrmParams {
    pub omega: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub g1: f64,
    pub g2: f64,
}

/// Scalar results at one point. Undefined or unrequested values are NaN.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TqrmReport {
    pub g2: f64,
    pub x_excitations: f64,
    pub zeta2: f64,
    pub n_photons: f64,
    pub negativity_qq: f64,
    pub negativity_q_f: f64,
    pub concurrence: f64,
    pub mutual_info: f64,
    pub discord: f64,
    pub coherence_re: f64,
    pub lqu: f64,
    pub p0: f64,
    pub gap_ratio: f64,
    pub n_fock_used: u32,
    pub m_used: u32,
}

/// Eigen-decomposition at a converged or fixed Fock cutoff.
pub struct TqrmSpectrum {
    eigs: EigenSystem,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> TqrmStatus {
    match e {
        Error::AtPoint { source, .. } => status_of(source),
        Error::InvalidParameter(_) | Error::InvalidSpace(_) | Error::InvalidSubsystem(_) => {
            TqrmStatus::InvalidArgument
        }
        Error::Config(_) | Error::Json(_) => TqrmStatus::Config,
        Error::CutoffExceeded { .. } | Error::TooFewLevels { .. } => TqrmStatus::CutoffExceeded,
        Error::Io(_) | Error::Csv(_) => TqrmStatus::Io,
        _ => TqrmStatus::Numerical,
    }
}

/// Run `f` behind the panic boundary and record any error.
fn guard(f: impl FnOnce() -> Result<TqrmStatus, (TqrmStatus, String)>) -> TqrmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            TqrmStatus::Panic
        }
    }
}

fn lib(e: Error) -> (TqrmStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (TqrmStatus, String) {
    (TqrmStatus::NullPointer, format!("{what} is null"))
}

fn params_from(p: *const TqrmParams) -> Result<ModelParams, (TqrmStatus, String)> {
    // SAFETY: checked for null; caller guarantees a valid, aligned struct.
    let p = unsafe { p.as_ref() }.ok_or_else(|| null("params"))?;
    ModelParams::new(p.omega, p.delta1, p.delta2, p.g1, p.g2).map_err(lib)
}

fn nan(v: Option<f64>) -> f64 {
    v.unwrap_or(f64::NAN)
}

impl From<&QuantifierReport> for TqrmReport {
    fn from(r: &QuantifierReport) -> Self {
        Self {
            g2: nan(r.g2),
            x_excitations: nan(r.x_excitations),
            zeta2: nan(r.zeta2),
            n_photons: nan(r.n_photons),
            negativity_qq: nan(r.negativity_qq),
            negativity_q_f: nan(r.negativity_q_f),
            concurrence: nan(r.concurrence),
            mutual_info: nan(r.mutual_info),
            discord: nan(r.discord),
            coherence_re: nan(r.coherence_re),
            lqu: nan(r.lqu),
            p0: nan(r.p0),
            gap_ratio: nan(r.gap_ratio),
            n_fock_used: r.n_fock_used as u32,
            m_used: r.m_used as u32,
        }
    }
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tqrm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tqrm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Evaluate every quantifier at thermal equilibrium with the default bath
/// (α = 0.001ω, ω_c = 10ω). `include_gap` non-zero also fills `gap_ratio`.
///
/// # Safety
/// `params` and `out` must be null or point to valid structs.
#[no_mangle]
pub unsafe extern "C" fn tqrm_evaluate_point(
    params: *const TqrmParams,
    temperature: f64,
    include_gap: i32,
    out: *mut TqrmReport,
) -> TqrmStatus {
    guard(|| {
        let p = params_from(params)?;
        // SAFETY: checked for null; caller guarantees validity.
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
        let bath = BathParams::for_mode(p.omega, temperature).map_err(lib)?;
        let opts = EvaluateOptions {
            include_gap: include_gap != 0,
            ..EvaluateOptions::default()
        };
        let r = evaluate_all(&p, &bath, temperature, &opts).map_err(lib)?;
        *out = TqrmReport::from(&r);
        Ok(TqrmStatus::Ok)
    })
}

/// Liouvillian gap ratio μ₁(g)/μ₁(0) with the default bath at `temperature`.
///
/// # Safety
/// `params` and `out` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn tqrm_gap_ratio(
    params: *const TqrmParams,
    temperature: f64,
    out: *mut f64,
) -> TqrmStatus {
    guard(|| {
        let p = params_from(params)?;
        // SAFETY: checked for null; caller guarantees validity.
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
        let bath = BathParams::for_mode(p.omega, temperature).map_err(lib)?;
        *out = gap_ratio(&p, &bath, None, &CutoffPolicy::default(), Route::Auto).map_err(lib)?;
        Ok(TqrmStatus::Ok)
    })
}

/// Diagonalize at Fock cutoff `n_fock`, or with `n_fock == 0` at the cutoff
/// where the lowest `levels` energies are converged. Free the handle with
/// `tqrm_spectrum_free`.
///
/// # Safety
/// `params` and `out` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn tqrm_spectrum_new(
    params: *const TqrmParams,
    n_fock: usize,
    levels: usize,
    out: *mut *mut TqrmSpectrum,
) -> TqrmStatus {
    guard(|| {
        let p = params_from(params)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let eigs = if n_fock > 0 {
            diagonalize_model(&p, HilbertSpace::new(n_fock).map_err(lib)?).map_err(lib)?
        } else {
            if levels == 0 {
                return Err((
                    TqrmStatus::InvalidArgument,
                    "levels must be positive when n_fock is 0".into(),
                ));
            }
            converge_cutoff(&p, &CutoffPolicy::default(), |n| {
                let e = diagonalize_model(&p, HilbertSpace::new(n)?)?;
                let t: Vec<f64> = e.energies().iter().take(levels).copied().collect();
                Ok((t, e))
            })
            .map_err(lib)?
            .value
        };
        // SAFETY: checked for null above.
        unsafe { *out = Box::into_raw(Box::new(TqrmSpectrum { eigs })) };
        Ok(TqrmStatus::Ok)
    })
}

/// Number of eigenstates in the handle (0 for null).
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tqrm_spectrum_len(h: *const TqrmSpectrum) -> usize {
    // SAFETY: caller guarantees a live handle or null.
    unsafe { h.as_ref() }.map_or(0, |s| s.eigs.len())
}

/// Fock cutoff used by the handle (0 for null).
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tqrm_spectrum_n_fock(h: *const TqrmSpectrum) -> usize {
    // SAFETY: caller guarantees a live handle or null.
    unsafe { h.as_ref() }.map_or(0, |s| s.eigs.n_fock_used())
}

/// Copy up to `len` ascending energies and their parities (±1) into the
/// buffers; either buffer may be null. `written` receives the count.
///
/// # Safety
/// Non-null buffers must hold `len` elements.
#[no_mangle]
pub unsafe extern "C" fn tqrm_spectrum_levels(
    h: *const TqrmSpectrum,
    energies: *mut f64,
    parities: *mut i8,
    len: usize,
    written: *mut usize,
) -> TqrmStatus {
    guard(|| {
        // SAFETY: caller guarantees a live handle or null.
        let s = unsafe { h.as_ref() }.ok_or_else(|| null("handle"))?;
        let k = len.min(s.eigs.len());
        for i in 0..k {
            // SAFETY: i < len and the caller sized the buffers.
            unsafe {
                if !energies.is_null() {
                    *energies.add(i) = s.eigs.energy(i);
                }
                if !parities.is_null() {
                    *parities.add(i) = s.eigs.parity(i);
                }
            }
        }
        if !written.is_null() {
            // SAFETY: checked for null.
            unsafe { *written = k };
        }
        Ok(TqrmStatus::Ok)
    })
}

/// Release a handle from `tqrm_spectrum_new`. Null is ignored.
///
/// # Safety
/// `h` must be null or a live handle not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tqrm_spectrum_free(h: *mut TqrmSpectrum) {
    if !h.is_null() {
        // SAFETY: the handle came from Box::into_raw in tqrm_spectrum_new.
        drop(unsafe { Box::from_raw(h) });
    }
}

/// Run a sweep from a JSON config and write its files into `out_dir` (or the
/// config's output.dir when `out_dir` is null). Returns
/// `TQRM_STATUS_PARTIAL_FAILURE` if any grid point failed.
///
/// # Safety
/// `config_json` must be a NUL-terminated string; `out_dir` null or one.
#[no_mangle]
pub unsafe extern "C" fn tqrm_run_sweep(
    config_json: *const c_char,
    out_dir: *const c_char,
) -> TqrmStatus {
    guard(|| {
        if config_json.is_null() {
            return Err(null("config_json"));
        }
        // SAFETY: checked for null; caller guarantees NUL termination.
        let text = unsafe { CStr::from_ptr(config_json) }
            .to_str()
            .map_err(|e| (TqrmStatus::Config, format!("config is not UTF-8: {e}")))?;
        let mut cfg = SweepConfig::from_json(text).map_err(lib)?;
        if !out_dir.is_null() {
            // SAFETY: checked for null; caller guarantees NUL termination.
            let d = unsafe { CStr::from_ptr(out_dir) }.to_str().map_err(|e| {
                (
                    TqrmStatus::InvalidArgument,
                    format!("out_dir is not UTF-8: {e}"),
                )
            })?;
            cfg.output.dir = Some(Path::new(d).to_path_buf());
        }
        let dir = cfg
            .output
            .dir
            .clone()
            .ok_or_else(|| (TqrmStatus::Config, "no output directory".to_string()))?;
        let result = run_sweep(&cfg).map_err(lib)?;
        write_outputs(&result, &cfg, &dir).map_err(lib)?;
        if result.failures.is_empty() {
            Ok(TqrmStatus::Ok)
        } else {
            Err((
                TqrmStatus::PartialFailure,
                format!(
                    "{} of {} grid points failed",
                    result.failures.len(),
                    result.failures.len() + result.rows.len()
                ),
            ))
        }
    })
}
