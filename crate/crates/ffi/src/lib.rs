//! C ABI over `lyaprof`.
//!
//! Runs are exposed through the opaque [`LpRun`] handle. Every function
//! returns an [`LpStatus`]; on failure, [`lp_last_error_message`] describes
//! the most recent error on the calling thread. Panics never cross the
//! boundary and are reported as `LP_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lyaprof::defect::Backend;
use lyaprof::eca::{Boundary, RuleEquivalenceClass, RuleTable};
use lyaprof::experiment::{result_json, run_single, DefectInit, ExperimentConfig, RunResult};
use lyaprof::lyapunov::max_lyapunov_bound;
use lyaprof::render::{render_heatmap, HeatmapSpec, ImageFormat};
use lyaprof::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Ok = 0,
    InvalidArgument = 1,
    NullPointer = 2,
    OutOfRange = 3,
    Runtime = 4,
    BufferTooSmall = 5,
    EmptyCone = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpBoundary {
    FixedZero = 0,
    FixedOne = 1,
    Periodic = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpBackend {
    Exact = 0,
    LogDomain = 1,
}

/// Parameters of one run. Start from `lp_config_default`.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct LpRunConfig {
    pub rule: i64,
    pub width: usize,
    pub steps: u64,
    pub seed: u64,
    pub boundary: LpBoundary,
    pub backend: LpBackend,
    /// First and last initially defective cell. A negative `defect_lo`
    /// selects the center cell.
    pub defect_lo: i64,
    pub defect_hi: i64,
    /// Record a heatmap row every `heatmap_stride` steps; 0 disables.
    pub heatmap_stride: u64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct LpGeometry {
    pub left_speed: f64,
    pub right_speed: f64,
    pub cone_width: usize,
    pub argmax_offset: i64,
}

/// Opaque result of a finished run.
pub struct LpRun {
    result: RunResult,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let text = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

type Failure = (LpStatus, String);

fn from_core(e: Error) -> Failure {
    let status = match e {
        Error::RuleOutOfRange(_) | Error::PositionOutOfRange { .. } | Error::InvalidInterval { .. } => {
            LpStatus::OutOfRange
        }
        Error::WidthTooSmall(_) | Error::ZeroSteps | Error::UnsupportedSteps { .. } | Error::InvalidConfig(_) => {
            LpStatus::InvalidArgument
        }
        Error::EmptyCone => LpStatus::EmptyCone,
        _ => LpStatus::Runtime,
    };
    (status, e.to_string())
}

fn null(what: &str) -> Failure {
    (LpStatus::NullPointer, format!("{what} is null"))
}

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> LpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LpStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic inside lyaprof");
            LpStatus::Panic
        }
    }
}

unsafe fn run_ref<'a>(run: *const LpRun) -> Result<&'a RunResult, Failure> {
    run.as_ref().map(|r| &r.result).ok_or_else(|| null("run"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

/// Message for the last failing call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn lp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Static, NUL-terminated library version.
#[no_mangle]
pub extern "C" fn lp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Fills `out` with the reference protocol: rule 110, 10001 cells,
/// 5000 steps, seed 1, fixed-zero boundary, log-domain counts, centered defect.
///
/// # Safety
/// `out` must be NULL or point to writable memory for one `LpRunConfig`.
#[no_mangle]
pub unsafe extern "C" fn lp_config_default(out: *mut LpRunConfig) -> LpStatus {
    guard(|| {
        let d = ExperimentConfig::default();
        let config = LpRunConfig {
            rule: i64::from(d.rule),
            width: d.width,
            steps: d.steps,
            seed: d.seed,
            boundary: LpBoundary::FixedZero,
            backend: LpBackend::LogDomain,
            defect_lo: -1,
            defect_hi: -1,
            heatmap_stride: 0,
        };
        write_out(out, config)
    })
}

fn to_experiment(c: &LpRunConfig) -> Result<ExperimentConfig, Failure> {
    let rule = RuleTable::from_number(c.rule).map_err(from_core)?.wolfram_number();
    let boundary = match c.boundary {
        LpBoundary::FixedZero => Boundary::FixedZero,
        LpBoundary::FixedOne => Boundary::FixedOne,
        LpBoundary::Periodic => Boundary::Periodic,
    };
    let backend = match c.backend {
        LpBackend::Exact => Backend::Exact,
        LpBackend::LogDomain => Backend::LogDomain,
    };
    let mut config = ExperimentConfig::new(rule, c.width, c.steps, c.seed)
        .with_boundary(boundary)
        .with_backend(backend)
        .with_heatmap(c.heatmap_stride);
    if c.defect_lo >= 0 {
        let range = |_| (LpStatus::OutOfRange, "defect_hi is before defect_lo".to_owned());
        let lo = c.defect_lo as usize;
        let hi = usize::try_from(c.defect_hi).map_err(range)?;
        config = config.with_init(if lo == hi {
            DefectInit::SingleDefect { position: lo }
        } else {
            DefectInit::DefectZone { lo, hi }
        });
    }
    config.validate().map_err(from_core)?;
    Ok(config)
}

/// Runs one experiment. On success `*out` owns a handle to release with
/// `lp_run_free`.
///
/// # Safety
/// `config` must point to a valid `LpRunConfig` and `out` to writable
/// memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn lp_run_new(config: *const LpRunConfig, out: *mut *mut LpRun) -> LpStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        out.write(ptr::null_mut());
        let config = config.as_ref().ok_or_else(|| null("config"))?;
        let config = to_experiment(config)?;
        let result = run_single(&config).map_err(from_core)?;
        out.write(Box::into_raw(Box::new(LpRun { result })));
        Ok(())
    })
}

/// # Safety
/// `run` must be NULL or a handle from `lp_run_new` not freed before.
#[no_mangle]
pub unsafe extern "C" fn lp_run_free(run: *mut LpRun) {
    if !run.is_null() {
        drop(Box::from_raw(run));
    }
}

/// Number of lattice cells, which is the length of the profile arrays.
///
/// # Safety
/// `run` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lp_run_width(run: *const LpRun, out: *mut usize) -> LpStatus {
    guard(|| write_out(out, run_ref(run)?.profile.lattice_width()))
}

/// Index of the cell reported as offset 0.
///
/// # Safety
/// `run` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lp_run_origin(run: *const LpRun, out: *mut usize) -> LpStatus {
    guard(|| write_out(out, run_ref(run)?.profile.origin))
}

unsafe fn copy_profile(values: &[f64], buf: *mut f64, len: usize, written: *mut usize) -> Result<(), Failure> {
    if !written.is_null() {
        written.write(values.len());
    }
    if len < values.len() {
        return Err((
            LpStatus::BufferTooSmall,
            format!("buffer holds {len} values, profile has {}", values.len()),
        ));
    }
    if buf.is_null() {
        return Err(null("buf"));
    }
    ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    Ok(())
}

/// Copies the normalized profile into `buf`. Unreached cells are `-INFINITY`.
/// `*written` (if not NULL) receives the profile length even when the
/// buffer is too small.
///
/// # Safety
/// `buf` must be writable for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn lp_run_normalized(
    run: *const LpRun,
    buf: *mut f64,
    len: usize,
    written: *mut usize,
) -> LpStatus {
    guard(|| copy_profile(&run_ref(run)?.profile.normalized, buf, len, written))
}

/// Copies the raw profile `(1/T) ln eps` into `buf`; see `lp_run_normalized`.
///
/// # Safety
/// `buf` must be writable for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn lp_run_raw(run: *const LpRun, buf: *mut f64, len: usize, written: *mut usize) -> LpStatus {
    guard(|| copy_profile(&run_ref(run)?.profile.raw, buf, len, written))
}

/// Largest raw profile entry (`-INFINITY` if every cell is unreached).
///
/// # Safety
/// `run` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lp_run_mle(run: *const LpRun, out: *mut f64) -> LpStatus {
    guard(|| write_out(out, run_ref(run)?.mle()))
}

/// Front speeds and extent of the defect cone.
///
/// # Safety
/// `run` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lp_run_geometry(run: *const LpRun, out: *mut LpGeometry) -> LpStatus {
    guard(|| {
        let g = run_ref(run)?.geometry.ok_or_else(|| from_core(Error::EmptyCone))?;
        write_out(
            out,
            LpGeometry {
                left_speed: g.left_speed,
                right_speed: g.right_speed,
                cone_width: g.width,
                argmax_offset: g.argmax_offset,
            },
        )
    })
}

/// Result document as JSON. Free with `lp_string_free`.
///
/// # Safety
/// `run` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lp_run_to_json(run: *const LpRun, include_raw: bool, out: *mut *mut c_char) -> LpStatus {
    guard(|| {
        let text = result_json(run_ref(run)?, include_raw).map_err(from_core)?;
        let text = CString::new(text).map_err(|e| (LpStatus::Runtime, e.to_string()))?;
        write_out(out, text.into_raw())
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn lp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Renders the recorded heatmap as a binary PGM. Requires a non-zero
/// `heatmap_stride`. Free the buffer with `lp_bytes_free`.
///
/// # Safety
/// `run` must be a live handle; `out` and `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lp_run_render_pgm(run: *const LpRun, out: *mut *mut u8, out_len: *mut usize) -> LpStatus {
    guard(|| {
        if out.is_null() || out_len.is_null() {
            return Err(null("output pointer"));
        }
        let spec = HeatmapSpec {
            format: ImageFormat::Pgm,
            ..HeatmapSpec::default()
        };
        let bytes = render_heatmap(run_ref(run)?, &spec)
            .map_err(from_core)?
            .into_boxed_slice();
        out_len.write(bytes.len());
        out.write(Box::into_raw(bytes).cast());
        Ok(())
    })
}

/// # Safety
/// `bytes` and `len` must come from one `lp_run_render_pgm` call, freed once.
#[no_mangle]
pub unsafe extern "C" fn lp_bytes_free(bytes: *mut u8, len: usize) {
    if !bytes.is_null() {
        drop(Box::from_raw(ptr::slice_from_raw_parts_mut(bytes, len)));
    }
}

/// Upper bound `ln C(T, 0) / T` on any per-cell exponent after `steps` steps.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lp_max_lyapunov_bound(steps: u64, out: *mut f64) -> LpStatus {
    guard(|| write_out(out, max_lyapunov_bound(steps).map_err(from_core)?))
}

/// Smallest rule number equivalent to `rule` under reflection and complement.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lp_minimal_representative(rule: i64, out: *mut u8) -> LpStatus {
    guard(|| {
        let rule = RuleTable::from_number(rule).map_err(from_core)?.wolfram_number();
        write_out(out, RuleEquivalenceClass::of(rule).minimal_representative)
    })
}
