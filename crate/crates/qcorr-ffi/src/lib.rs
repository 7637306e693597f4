// Copyright 2026 qcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! C ABI over the qcorr library.
//!
//! States and production series are opaque handles created and destroyed by
//! this library. Every fallible call returns a [`QcorrStatus`]; outputs are
//! written through pointers only on `QCORR_STATUS_OK`. Complex matrices cross
//! the boundary as separate row-major `re`/`im` buffers of length dim*dim.
//!
//! The C header is generated into `include/qcorr.h` at build time.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use qcorr::bipartite::{DensityMatrix, StateDims};
use qcorr::correlations;
use qcorr::entanglement::{self, EntropyFunctional};
use qcorr::error::Error;
use qcorr::numerics::{CMatrix, HermitianOperator, C64};
use qcorr::xxz::{self, ChainConfig, EvolveMode, EvolveOptions, ProductionSeries};
use qcorr::EnsembleOptions;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QcorrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    NonHermitian = 3,
    NotPositive = 4,
    TraceNotOne = 5,
    MissingDims = 6,
    DimensionMismatch = 7,
    NegativeSpectrum = 8,
    StepTooLarge = 9,
    DimensionCap = 10,
    Io = 11,
    Parse = 12,
    Panic = 13,
}

fn status_of(err: &Error) -> QcorrStatus {
    match err {
        Error::NonHermitian { .. } => QcorrStatus::NonHermitian,
        Error::NegativeSpectrum { .. } => QcorrStatus::NegativeSpectrum,
        Error::NotPositive { .. } => QcorrStatus::NotPositive,
        Error::TraceNotOne { .. } => QcorrStatus::TraceNotOne,
        Error::MissingDims => QcorrStatus::MissingDims,
        Error::DimensionMismatch(_) => QcorrStatus::DimensionMismatch,
        Error::StepTooLarge { .. } => QcorrStatus::StepTooLarge,
        Error::DimensionCap { .. } => QcorrStatus::DimensionCap,
        Error::Io(_) => QcorrStatus::Io,
        Error::Parse(_) => QcorrStatus::Parse,
        _ => QcorrStatus::InvalidParameter,
    }
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn qcorr_status_message(status: QcorrStatus) -> *const c_char {
    let msg: &'static [u8] = match status {
        QcorrStatus::Ok => b"ok\0",
        QcorrStatus::NullPointer => b"null pointer argument\0",
        QcorrStatus::InvalidParameter => b"invalid parameter\0",
        QcorrStatus::NonHermitian => b"matrix is not Hermitian\0",
        QcorrStatus::NotPositive => b"operator is not positive semidefinite\0",
        QcorrStatus::TraceNotOne => b"trace differs from one\0",
        QcorrStatus::MissingDims => b"state carries no bipartite dimension tag\0",
        QcorrStatus::DimensionMismatch => b"dimension mismatch\0",
        QcorrStatus::NegativeSpectrum => b"negative spectrum\0",
        QcorrStatus::StepTooLarge => b"euler step too large\0",
        QcorrStatus::DimensionCap => b"chain dimension exceeds the cap\0",
        QcorrStatus::Io => b"i/o failure\0",
        QcorrStatus::Parse => b"parse error\0",
        QcorrStatus::Panic => b"internal panic\0",
    };
    msg.as_ptr() as *const c_char
}

/// Opaque density-matrix handle.
pub struct QcorrState {
    inner: DensityMatrix,
}

/// Opaque production-series handle.
pub struct QcorrSeries {
    inner: ProductionSeries,
}

/// Options for the randomized ensemble searches. `max_ensemble = 0` lets the
/// library pick its default (rank squared).
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct QcorrSearchOptions {
    pub restarts: usize,
    pub max_ensemble: usize,
    pub seed: u64,
    pub iter_cap: usize,
}

impl QcorrSearchOptions {
    fn to_options(self) -> EnsembleOptions {
        let mut opts = EnsembleOptions::new(self.seed);
        if self.restarts > 0 {
            opts.restarts = self.restarts;
        }
        if self.max_ensemble > 0 {
            opts.max_ensemble = Some(self.max_ensemble);
        }
        if self.iter_cap > 0 {
            opts.iter_cap = self.iter_cap;
        }
        opts
    }
}

/// Entropy functional selector for the C surface.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QcorrEntropy {
    VonNeumann = 0,
    Linear = 1,
}

impl QcorrEntropy {
    fn to_functional(self) -> EntropyFunctional {
        match self {
            QcorrEntropy::VonNeumann => EntropyFunctional::VonNeumann,
            QcorrEntropy::Linear => EntropyFunctional::Linear,
        }
    }
}

fn guard(body: impl FnOnce() -> QcorrStatus) -> QcorrStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => QcorrStatus::Panic,
    }
}

unsafe fn matrix_from_buffers(re: *const f64, im: *const f64, dim: usize) -> Option<CMatrix> {
    if re.is_null() || im.is_null() || dim == 0 {
        return None;
    }
    let re = std::slice::from_raw_parts(re, dim * dim);
    let im = std::slice::from_raw_parts(im, dim * dim);
    Some(CMatrix::from_fn(dim, dim, |i, j| {
        C64::new(re[i * dim + j], im[i * dim + j])
    }))
}

unsafe fn path_from_cstr<'a>(path: *const c_char) -> Option<&'a Path> {
    if path.is_null() {
        return None;
    }
    CStr::from_ptr(path).to_str().ok().map(Path::new)
}

/// Creates a state from row-major re/im buffers of length dim*dim. Pass
/// d1 = d2 = 0 for an untagged single-system state; otherwise d1 * d2 must
/// equal dim.
///
/// # Safety
/// `re` and `im` must point to dim*dim readable doubles and `out` must be a
/// valid location for a handle pointer.
#[no_mangle]
pub unsafe extern "C" fn qcorr_state_new(
    re: *const f64,
    im: *const f64,
    dim: usize,
    d1: usize,
    d2: usize,
    out: *mut *mut QcorrState,
) -> QcorrStatus {
    guard(|| {
        if out.is_null() {
            return QcorrStatus::NullPointer;
        }
        let Some(m) = matrix_from_buffers(re, im, dim) else {
            return QcorrStatus::NullPointer;
        };
        let dims = if d1 == 0 && d2 == 0 {
            Ok(StateDims::Single(dim))
        } else {
            StateDims::bipartite(d1, d2)
        };
        let state = dims.and_then(|dims| DensityMatrix::new(m, dims));
        match state {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(QcorrState { inner }));
                QcorrStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Reads a QMAT v1 state file.
///
/// # Safety
/// `path` must be a valid NUL-terminated string and `out` a valid location.
#[no_mangle]
pub unsafe extern "C" fn qcorr_state_read(
    path: *const c_char,
    out: *mut *mut QcorrState,
) -> QcorrStatus {
    guard(|| {
        if out.is_null() {
            return QcorrStatus::NullPointer;
        }
        let Some(path) = path_from_cstr(path) else {
            return QcorrStatus::NullPointer;
        };
        match qcorr::io::read_density_matrix(path) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(QcorrState { inner }));
                QcorrStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Writes a state as QMAT v1 (with DIMS when bipartite-tagged).
///
/// # Safety
/// `state` must be a live handle and `path` a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn qcorr_state_write(
    state: *const QcorrState,
    path: *const c_char,
) -> QcorrStatus {
    guard(|| {
        let (Some(state), Some(path)) = (state.as_ref(), path_from_cstr(path)) else {
            return QcorrStatus::NullPointer;
        };
        match qcorr::io::write_density_matrix(path, &state.inner) {
            Ok(()) => QcorrStatus::Ok,
            Err(e) => status_of(&e),
        }
    })
}

/// Frees a state handle. Passing NULL is a no-op.
///
/// # Safety
/// `state` must have come from this library and not been freed before.
#[no_mangle]
pub unsafe extern "C" fn qcorr_state_free(state: *mut QcorrState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Total dimension of the state.
///
/// # Safety
/// `state` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn qcorr_state_dim(state: *const QcorrState) -> usize {
    state.as_ref().map_or(0, |s| s.inner.dim())
}

/// Bipartite factor dimensions; both zero when the state is untagged.
///
/// # Safety
/// `state` must be a live handle; `d1` and `d2` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcorr_state_dims(
    state: *const QcorrState,
    d1: *mut usize,
    d2: *mut usize,
) -> QcorrStatus {
    guard(|| {
        let (Some(state), false, false) = (state.as_ref(), d1.is_null(), d2.is_null()) else {
            return QcorrStatus::NullPointer;
        };
        match state.inner.dims() {
            StateDims::Bipartite(b) => {
                *d1 = b.d1();
                *d2 = b.d2();
            }
            StateDims::Single(_) => {
                *d1 = 0;
                *d2 = 0;
            }
        }
        QcorrStatus::Ok
    })
}

/// Copies the state matrix into row-major re/im buffers of length dim*dim.
///
/// # Safety
/// Buffers must hold dim*dim writable doubles.
#[no_mangle]
pub unsafe extern "C" fn qcorr_state_get(
    state: *const QcorrState,
    re: *mut f64,
    im: *mut f64,
) -> QcorrStatus {
    guard(|| {
        let (Some(state), false, false) = (state.as_ref(), re.is_null(), im.is_null()) else {
            return QcorrStatus::NullPointer;
        };
        let d = state.inner.dim();
        let m = state.inner.matrix();
        let re = std::slice::from_raw_parts_mut(re, d * d);
        let im = std::slice::from_raw_parts_mut(im, d * d);
        for i in 0..d {
            for j in 0..d {
                re[i * d + j] = m[(i, j)].re;
                im[i * d + j] = m[(i, j)].im;
            }
        }
        QcorrStatus::Ok
    })
}

/// Gibbs state of the XXZ chain, tagged with the bipartition at `cut`
/// (pass 0 for the default half-chain cut).
///
/// # Safety
/// `out` must be a valid location for a handle pointer.
#[no_mangle]
pub unsafe extern "C" fn qcorr_gibbs_xxz(
    sites: usize,
    beta: f64,
    delta: f64,
    cut: usize,
    out: *mut *mut QcorrState,
) -> QcorrStatus {
    guard(|| {
        if out.is_null() {
            return QcorrStatus::NullPointer;
        }
        let cut = if cut == 0 { sites.div_ceil(2) } else { cut };
        let result = (|| {
            let cfg = ChainConfig::new(sites, beta, delta, (0, 1.max(sites.saturating_sub(1))), cut)?;
            let h = xxz::xxz_hamiltonian(&cfg)?;
            let rho = xxz::gibbs_state(&h, beta)?;
            let dims = cfg.bipartite_dims();
            rho.with_bipartite_dims(dims.d1(), dims.d2())
        })();
        match result {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(QcorrState { inner }));
                QcorrStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// The canonical maximally entangled state on an n x n composite.
///
/// # Safety
/// `out` must be a valid location for a handle pointer.
#[no_mangle]
pub unsafe extern "C" fn qcorr_state_max_entangled(
    n: usize,
    out: *mut *mut QcorrState,
) -> QcorrStatus {
    guard(|| {
        if out.is_null() {
            return QcorrStatus::NullPointer;
        }
        match qcorr::bipartite::max_entangled(n) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(QcorrState { inner }));
                QcorrStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// The two-qubit singlet state.
///
/// # Safety
/// `out` must be a valid location for a handle pointer.
#[no_mangle]
pub unsafe extern "C" fn qcorr_state_singlet(out: *mut *mut QcorrState) -> QcorrStatus {
    guard(|| {
        if out.is_null() {
            return QcorrStatus::NullPointer;
        }
        *out = Box::into_raw(Box::new(QcorrState {
            inner: qcorr::bipartite::singlet(),
        }));
        QcorrStatus::Ok
    })
}

/// Entropy of the state under the chosen functional.
///
/// # Safety
/// `state` must be a live handle and `value` writable.
#[no_mangle]
pub unsafe extern "C" fn qcorr_entropy(
    state: *const QcorrState,
    functional: QcorrEntropy,
    value: *mut f64,
) -> QcorrStatus {
    guard(|| {
        let (Some(state), false) = (state.as_ref(), value.is_null()) else {
            return QcorrStatus::NullPointer;
        };
        *value = entanglement::entropy(&state.inner, functional.to_functional());
        QcorrStatus::Ok
    })
}

/// Decomposition-free entanglement bound of a bipartite state.
///
/// # Safety
/// `state` must be a live handle and `value` writable.
#[no_mangle]
pub unsafe extern "C" fn qcorr_ma(state: *const QcorrState, value: *mut f64) -> QcorrStatus {
    guard(|| {
        let (Some(state), false) = (state.as_ref(), value.is_null()) else {
            return QcorrStatus::NullPointer;
        };
        match entanglement::m_a(&state.inner) {
            Ok(v) => {
                *value = v;
                QcorrStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// PPT verdict from the partial-transpose spectrum.
///
/// # Safety
/// `state` must be a live handle; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcorr_ppt_direct(
    state: *const QcorrState,
    is_ppt: *mut bool,
    min_eigenvalue: *mut f64,
) -> QcorrStatus {
    guard(|| {
        let (Some(state), false, false) = (state.as_ref(), is_ppt.is_null(), min_eigenvalue.is_null())
        else {
            return QcorrStatus::NullPointer;
        };
        match entanglement::ppt_direct(&state.inner) {
            Ok(v) => {
                *is_ppt = v.is_ppt;
                *min_eigenvalue = v.min_pt_eigenvalue;
                QcorrStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// PPT verdict from the entanglement mapping (CP and co-CP Choi minima).
///
/// # Safety
/// `state` must be a live handle; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcorr_ppt_mapping(
    state: *const QcorrState,
    is_ppt: *mut bool,
    cp_min: *mut f64,
    cocp_min: *mut f64,
) -> QcorrStatus {
    guard(|| {
        let (Some(state), false, false, false) = (
            state.as_ref(),
            is_ppt.is_null(),
            cp_min.is_null(),
            cocp_min.is_null(),
        ) else {
            return QcorrStatus::NullPointer;
        };
        match entanglement::entanglement_mapping(&state.inner) {
            Ok(map) => {
                let v = entanglement::cp_cocp_verdict(&map);
                *is_ppt = v.is_ppt;
                *cp_min = v.choi_cp_min.unwrap_or(f64::NAN);
                *cocp_min = v.choi_cocp_min.unwrap_or(f64::NAN);
                QcorrStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Entanglement of formation by seeded ensemble search.
///
/// # Safety
/// `state` must be a live handle; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcorr_eof(
    state: *const QcorrState,
    functional: QcorrEntropy,
    options: QcorrSearchOptions,
    value: *mut f64,
    converged: *mut bool,
) -> QcorrStatus {
    guard(|| {
        let (Some(state), false, false) = (state.as_ref(), value.is_null(), converged.is_null())
        else {
            return QcorrStatus::NullPointer;
        };
        match entanglement::eof(&state.inner, functional.to_functional(), &options.to_options()) {
            Ok(res) => {
                *value = res.value;
                *converged = res.converged;
                QcorrStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Quantum-correlation distance for an observable given as row-major re/im
/// buffers of length dim*dim.
///
/// # Safety
/// `state` must be a live handle; buffers must hold dim*dim doubles; outputs
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcorr_dqc(
    state: *const QcorrState,
    obs_re: *const f64,
    obs_im: *const f64,
    options: QcorrSearchOptions,
    value: *mut f64,
    converged: *mut bool,
) -> QcorrStatus {
    guard(|| {
        let (Some(state), false, false) = (state.as_ref(), value.is_null(), converged.is_null())
        else {
            return QcorrStatus::NullPointer;
        };
        let Some(m) = matrix_from_buffers(obs_re, obs_im, state.inner.dim()) else {
            return QcorrStatus::NullPointer;
        };
        let result = HermitianOperator::new(m).and_then(|a| {
            correlations::quantum_correlation_distance(&state.inner, &a, &options.to_options())
        });
        match result {
            Ok(res) => {
                *value = res.value;
                *converged = res.converged;
                QcorrStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Correlation coefficient of single-factor observables a (x) 1 and 1 (x) b,
/// each given as row-major re/im buffers over its factor dimension.
///
/// # Safety
/// `state` must be a live handle; buffers must match the factor dimensions;
/// `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcorr_cq(
    state: *const QcorrState,
    a_re: *const f64,
    a_im: *const f64,
    b_re: *const f64,
    b_im: *const f64,
    value: *mut f64,
) -> QcorrStatus {
    guard(|| {
        let (Some(state), false) = (state.as_ref(), value.is_null()) else {
            return QcorrStatus::NullPointer;
        };
        let dims = match state.inner.bipartite_dims() {
            Ok(d) => d,
            Err(e) => return status_of(&e),
        };
        let (Some(a), Some(b)) = (
            matrix_from_buffers(a_re, a_im, dims.d1()),
            matrix_from_buffers(b_re, b_im, dims.d2()),
        ) else {
            return QcorrStatus::NullPointer;
        };
        let result = HermitianOperator::new(a).and_then(|a| {
            let b = HermitianOperator::new(b)?;
            correlations::quantum_correlation_coefficient(&state.inner, &a, &b)
        });
        match result {
            Ok(rep) => {
                *value = rep.value;
                QcorrStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Runs the XXZ jump evolution. `sigma0` may be NULL to start from the
/// alternating product state. Pass `euler = false` for the exact semigroup.
///
/// # Safety
/// `sigma0`, when non-NULL, must be a live handle; `out` must be a valid
/// location for a handle pointer.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn qcorr_evolve_xxz(
    sites: usize,
    beta: f64,
    delta: f64,
    swap_k: usize,
    swap_l: usize,
    cut: usize,
    sigma0: *const QcorrState,
    tmax: f64,
    steps: usize,
    euler: bool,
    renormalize: bool,
    out: *mut *mut QcorrSeries,
) -> QcorrStatus {
    guard(|| {
        if out.is_null() {
            return QcorrStatus::NullPointer;
        }
        let result = (|| {
            let cut = if cut == 0 { sites.div_ceil(2) } else { cut };
            let cfg = ChainConfig::new(sites, beta, delta, (swap_k, swap_l), cut)?;
            let initial = match sigma0.as_ref() {
                Some(handle) => {
                    let dims = cfg.bipartite_dims();
                    handle.inner.with_bipartite_dims(dims.d1(), dims.d2())?
                }
                None => xxz::neel_state(&cfg)?,
            };
            let opts = EvolveOptions {
                mode: if euler {
                    EvolveMode::EulerFirstOrder
                } else {
                    EvolveMode::ExactSemigroup
                },
                renormalize,
            };
            xxz::evolve(&cfg, &initial, tmax, steps, opts).map(|run| run.series)
        })();
        match result {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(QcorrSeries { inner }));
                QcorrStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Number of sampled times in a series.
///
/// # Safety
/// `series` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn qcorr_series_len(series: *const QcorrSeries) -> usize {
    series.as_ref().map_or(0, |s| s.inner.times.len())
}

/// Reads one series row.
///
/// # Safety
/// `series` must be a live handle; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcorr_series_get(
    series: *const QcorrSeries,
    index: usize,
    t: *mut f64,
    ea: *mut f64,
    ma: *mut f64,
    trace_drift: *mut f64,
) -> QcorrStatus {
    guard(|| {
        let (Some(series), false, false, false, false) = (
            series.as_ref(),
            t.is_null(),
            ea.is_null(),
            ma.is_null(),
            trace_drift.is_null(),
        ) else {
            return QcorrStatus::NullPointer;
        };
        let s = &series.inner;
        if index >= s.times.len() {
            return QcorrStatus::InvalidParameter;
        }
        *t = s.times[index];
        *ea = s.ea_values[index];
        *ma = s.ma_values[index];
        *trace_drift = s.trace_drift[index];
        QcorrStatus::Ok
    })
}

/// Writes a series as CSV (`t,ea,ma,trace_drift`).
///
/// # Safety
/// `series` must be a live handle and `path` a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn qcorr_series_write_csv(
    series: *const QcorrSeries,
    path: *const c_char,
) -> QcorrStatus {
    guard(|| {
        let (Some(series), Some(path)) = (series.as_ref(), path_from_cstr(path)) else {
            return QcorrStatus::NullPointer;
        };
        match qcorr::io::write_series_csv(path, &series.inner) {
            Ok(()) => QcorrStatus::Ok,
            Err(e) => status_of(&e),
        }
    })
}

/// Frees a series handle. Passing NULL is a no-op.
///
/// # Safety
/// `series` must have come from this library and not been freed before.
#[no_mangle]
pub unsafe extern "C" fn qcorr_series_free(series: *mut QcorrSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}
