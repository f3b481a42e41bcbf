//! C interface to `analog-bench`.
//!
//! Every function returns an [`AbStatus`]; results go through out-pointers.
//! Wire arrays, S-parameter series and extraction results are opaque
//! handles that the caller frees with the matching `*_free` function. The
//! message of the most recent failure on the calling thread is available
//! from [`ab_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use analog_bench::em::{solve_sparams, EmError, EmWave, Slab};
use analog_bench::nrw::{extract, ExtractOptions, ExtractedParams, NrwError, RowOutcome, SParamRow, SParamSeries};
use analog_bench::qm::{rt_delta, rt_rect, DeltaBarrier, QmBarrier, QmError};
use analog_bench::units;
use analog_bench::wire::{self, WireArray, WireError};
use num_complex::Complex64;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    GeometryViolation = 3,
    ZeroImpedance = 4,
    TangentPole = 5,
    NoRoot = 6,
    BranchAmbiguity = 7,
    Indeterminate = 8,
    OutOfRange = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AbComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for AbComplex {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<AbComplex> for Complex64 {
    fn from(z: AbComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

/// Reflection and transmission amplitudes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AbScatter {
    pub r: AbComplex,
    pub t: AbComplex,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AbConstants {
    pub h: f64,
    pub hbar: f64,
    pub c0: f64,
    pub m_e: f64,
    pub z0: f64,
    pub ev: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AbEffectiveBarrier {
    pub photon_energy: f64,
    pub height: f64,
    pub effective_mass: f64,
    pub thickness: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AbExtractedRow {
    pub frequency: f64,
    pub z: AbComplex,
    pub n: AbComplex,
    pub eps: AbComplex,
    pub mu: AbComplex,
    pub branch: i64,
}

/// Opaque wire-array geometry.
pub struct AbWireArray(WireArray);

/// Opaque S-parameter series under construction.
pub struct AbSeries {
    thickness: f64,
    rows: Vec<SParamRow>,
}

/// Opaque NRW extraction result.
pub struct AbExtraction(ExtractedParams);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

trait Status {
    fn status(&self) -> AbStatus;
}

impl Status for QmError {
    fn status(&self) -> AbStatus {
        AbStatus::InvalidArgument
    }
}

impl Status for EmError {
    fn status(&self) -> AbStatus {
        match self {
            EmError::ZeroImpedance => AbStatus::ZeroImpedance,
            _ => AbStatus::InvalidArgument,
        }
    }
}

impl Status for WireError {
    fn status(&self) -> AbStatus {
        match self {
            WireError::GeometryViolation { .. } => AbStatus::GeometryViolation,
            WireError::TangentPole(_) => AbStatus::TangentPole,
            WireError::ZeroImpedance => AbStatus::ZeroImpedance,
            WireError::NoRootInBracket | WireError::NoCrossingInBand { .. } => AbStatus::NoRoot,
            WireError::Em(e) => e.status(),
            _ => AbStatus::InvalidArgument,
        }
    }
}

impl Status for NrwError {
    fn status(&self) -> AbStatus {
        match self {
            NrwError::BranchAmbiguity { .. } => AbStatus::BranchAmbiguity,
            NrwError::NoValidRows => AbStatus::Indeterminate,
            NrwError::InvalidSeries(_) => AbStatus::InvalidArgument,
        }
    }
}

fn fail<E: Status + std::fmt::Display>(e: E) -> AbStatus {
    set_error(&e.to_string());
    e.status()
}

/// Run `f`, converting panics into [`AbStatus::Panic`].
fn guard<F: FnOnce() -> AbStatus>(f: F) -> AbStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| {
        set_error("internal panic");
        AbStatus::Panic
    })
}

macro_rules! out {
    ($p:expr) => {
        match unsafe { $p.as_mut() } {
            Some(r) => r,
            None => {
                set_error("null output pointer");
                return AbStatus::NullPointer;
            }
        }
    };
}

macro_rules! handle {
    ($p:expr) => {
        match unsafe { $p.as_ref() } {
            Some(r) => r,
            None => {
                set_error("null handle");
                return AbStatus::NullPointer;
            }
        }
    };
}

/// Message of the last failed call on this thread. Valid until the next
/// failing call on the same thread; never null.
#[no_mangle]
pub extern "C" fn ab_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[no_mangle]
pub extern "C" fn ab_constants() -> AbConstants {
    let k = units::constants();
    AbConstants {
        h: k.h,
        hbar: k.hbar,
        c0: k.c0,
        m_e: k.m_e,
        z0: k.z0,
        ev: k.ev,
    }
}

/// Rectangular barrier of `height` (J) and `width` (m) for a particle of
/// `mass` (kg) at `energy` (J).
///
/// # Safety
/// Pointer arguments must be null or valid for the duration of the call.
#[no_mangle]
pub unsafe extern "C" fn ab_qm_rect(height: f64, width: f64, mass: f64, energy: f64, out: *mut AbScatter) -> AbStatus {
    guard(|| {
        let out = out!(out);
        match QmBarrier::new(height, width, mass).and_then(|b| rt_rect(&b, energy)) {
            Ok(rt) => {
                *out = AbScatter {
                    r: rt.r.into(),
                    t: rt.t.into(),
                };
                AbStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Delta barrier of `strength` (J·m) at free wavenumber `k` (1/m).
///
/// # Safety
/// Pointer arguments must be null or valid for the duration of the call.
#[no_mangle]
pub unsafe extern "C" fn ab_qm_delta(strength: f64, mass: f64, k: f64, out: *mut AbScatter) -> AbStatus {
    guard(|| {
        let out = out!(out);
        match DeltaBarrier::new(strength, mass).and_then(|b| rt_delta(&b, k)) {
            Ok(rt) => {
                *out = AbScatter {
                    r: rt.r.into(),
                    t: rt.t.into(),
                };
                AbStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// S-parameters (`r` = s11, `t` = s21) of a slab at frequency `f` (Hz).
///
/// # Safety
/// Pointer arguments must be null or valid for the duration of the call.
#[no_mangle]
pub unsafe extern "C" fn ab_em_slab(
    n: AbComplex,
    z: AbComplex,
    thickness: f64,
    f: f64,
    out: *mut AbScatter,
) -> AbStatus {
    guard(|| {
        let out = out!(out);
        let result = Slab::new(n.into(), z.into(), thickness)
            .and_then(|slab| EmWave::new(f).and_then(|w| solve_sparams(&slab, &w)));
        match result {
            Ok(sp) => {
                *out = AbScatter {
                    r: sp.s11.into(),
                    t: sp.s21.into(),
                };
                AbStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// New wire array; lengths in metres. Free with [`ab_wire_array_free`].
///
/// # Safety
/// Pointer arguments must be null or valid for the duration of the call.
#[no_mangle]
pub unsafe extern "C" fn ab_wire_array_new(
    radius: f64,
    pitch_transverse: f64,
    pitch_longitudinal: f64,
    rows: u32,
    out: *mut *mut AbWireArray,
) -> AbStatus {
    guard(|| {
        let out = out!(out);
        match WireArray::new(radius, pitch_transverse, pitch_longitudinal, rows) {
            Ok(spec) => {
                *out = Box::into_raw(Box::new(AbWireArray(spec)));
                AbStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `handle` must come from [`ab_wire_array_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ab_wire_array_free(handle: *mut AbWireArray) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// # Safety
/// Pointer arguments must be null or valid for the duration of the call.
#[no_mangle]
pub unsafe extern "C" fn ab_wire_array_index(handle: *const AbWireArray, f: f64, out: *mut AbComplex) -> AbStatus {
    guard(|| {
        let spec = handle!(handle);
        let out = out!(out);
        match wire::brown_index(&spec.0, f) {
            Ok(n) => {
                *out = n.into();
                AbStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// Pointer arguments must be null or valid for the duration of the call.
#[no_mangle]
pub unsafe extern "C" fn ab_wire_array_impedance(handle: *const AbWireArray, f: f64, out: *mut AbComplex) -> AbStatus {
    guard(|| {
        let spec = handle!(handle);
        let out = out!(out);
        match wire::brown_index(&spec.0, f).and_then(|n| wire::brown_impedance(&spec.0, f, n)) {
            Ok(z) => {
                *out = z.into();
                AbStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// Pointer arguments must be null or valid for the duration of the call.
#[no_mangle]
pub unsafe extern "C" fn ab_wire_array_barrier(
    handle: *const AbWireArray,
    f: f64,
    out: *mut AbEffectiveBarrier,
) -> AbStatus {
    guard(|| {
        let spec = handle!(handle);
        let out = out!(out);
        match wire::effective_barrier(&spec.0, f) {
            Ok(e) => {
                *out = AbEffectiveBarrier {
                    photon_energy: e.photon_energy,
                    height: e.height,
                    effective_mass: e.effective_mass,
                    thickness: e.thickness,
                };
                AbStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Transverse pitch giving `V_b·b = target` (J·m).
///
/// # Safety
/// Pointer arguments must be null or valid for the duration of the call.
#[no_mangle]
pub unsafe extern "C" fn ab_solve_lattice_a(b: f64, target: f64, f: f64, radius: f64, out: *mut f64) -> AbStatus {
    guard(|| {
        let out = out!(out);
        match wire::solve_lattice_a(b, target, f, radius) {
            Ok(sol) => {
                *out = sol.a;
                AbStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Empty S-parameter series for a slab of `thickness` (m).
///
/// # Safety
/// Pointer arguments must be null or valid for the duration of the call.
#[no_mangle]
pub unsafe extern "C" fn ab_series_new(thickness: f64, out: *mut *mut AbSeries) -> AbStatus {
    guard(|| {
        let out = out!(out);
        if !(thickness > 0.0 && thickness.is_finite()) {
            set_error("thickness must be positive");
            return AbStatus::InvalidArgument;
        }
        *out = Box::into_raw(Box::new(AbSeries {
            thickness,
            rows: Vec::new(),
        }));
        AbStatus::Ok
    })
}

/// Append a row; frequencies must increase.
///
/// # Safety
/// `handle` must come from [`ab_series_new`].
#[no_mangle]
pub unsafe extern "C" fn ab_series_push(handle: *mut AbSeries, f: f64, s11: AbComplex, s21: AbComplex) -> AbStatus {
    guard(|| {
        let series = out!(handle);
        series.rows.push(SParamRow {
            frequency: f,
            s11: s11.into(),
            s21: s21.into(),
        });
        AbStatus::Ok
    })
}

/// # Safety
/// `handle` must come from [`ab_series_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ab_series_free(handle: *mut AbSeries) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Invert the series. A negative `initial_branch` means "start at 0 and
/// report ambiguity"; otherwise it fixes the branch at the first row.
///
/// # Safety
/// Pointer arguments must be null or valid for the duration of the call.
#[no_mangle]
pub unsafe extern "C" fn ab_nrw_extract(
    handle: *const AbSeries,
    initial_branch: i64,
    out: *mut *mut AbExtraction,
) -> AbStatus {
    guard(|| {
        let series = handle!(handle);
        let out = out!(out);
        let opts = ExtractOptions {
            initial_branch: (initial_branch >= 0).then_some(initial_branch),
            ..Default::default()
        };
        let result = SParamSeries::new(series.rows.clone(), series.thickness).and_then(|s| extract(&s, &opts));
        match result {
            Ok(p) => {
                *out = Box::into_raw(Box::new(AbExtraction(p)));
                AbStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// Pointer arguments must be null or valid for the duration of the call.
#[no_mangle]
pub unsafe extern "C" fn ab_extraction_len(handle: *const AbExtraction, out: *mut usize) -> AbStatus {
    guard(|| {
        let ex = handle!(handle);
        *out!(out) = ex.0.rows.len();
        AbStatus::Ok
    })
}

/// Row `index`; returns [`AbStatus::Indeterminate`] for a gap, with only
/// `frequency` filled in.
///
/// # Safety
/// Pointer arguments must be null or valid for the duration of the call.
#[no_mangle]
pub unsafe extern "C" fn ab_extraction_row(
    handle: *const AbExtraction,
    index: usize,
    out: *mut AbExtractedRow,
) -> AbStatus {
    guard(|| {
        let ex = handle!(handle);
        let out = out!(out);
        match ex.0.rows.get(index) {
            None => {
                set_error("row index out of range");
                AbStatus::OutOfRange
            }
            Some(RowOutcome::Indeterminate { frequency }) => {
                *out = AbExtractedRow {
                    frequency: *frequency,
                    ..Default::default()
                };
                set_error("indeterminate row");
                AbStatus::Indeterminate
            }
            Some(RowOutcome::Value(e)) => {
                *out = AbExtractedRow {
                    frequency: e.frequency,
                    z: e.z.into(),
                    n: e.n.into(),
                    eps: e.eps.into(),
                    mu: e.mu.into(),
                    branch: e.branch,
                };
                AbStatus::Ok
            }
        }
    })
}

/// # Safety
/// `handle` must come from [`ab_nrw_extract`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ab_extraction_free(handle: *mut AbExtraction) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}
