// Copyright 2026 qcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Numerical tolerances used throughout the crate.

use std::sync::OnceLock;

/// Relative hermiticity tolerance: max |M - M*| entry vs max |entry|.
pub const HERMITICITY_RTOL: f64 = 1e-9;

/// Absolute tolerance on |Tr rho - 1| for density matrices.
pub const TRACE_TOL: f64 = 1e-10;

/// Tolerance on ensemble component norms, | ||psi|| - 1 |.
pub const UNIT_NORM_TOL: f64 = 1e-10;

/// Trace-norm tolerance for ensemble barycenter reproduction.
pub const BARYCENTER_TOL: f64 = 1e-8;

/// Orthonormality tolerance for decomposition bases.
pub const ORTHONORMAL_TOL: f64 = 1e-10;

/// Frobenius tolerance on mix*mix - I for ensemble isometries.
pub const ISOMETRY_TOL: f64 = 1e-8;

/// Rank threshold, relative to the largest eigenvalue.
pub const RANK_RTOL: f64 = 1e-10;

/// Ensemble weights below this are dropped.
pub const WEIGHT_DROP: f64 = 1e-12;

/// Marginal variances below this are treated as degenerate.
pub const VARIANCE_FLOOR: f64 = 1e-12;

static PSD_FLOOR: OnceLock<f64> = OnceLock::new();

/// Eigenvalues above `-psd_floor()` count as non-negative; smaller ones are
/// rejected. Defaults to 1e-10 and can be overridden through the
/// `QCORR_PSD_FLOOR` environment variable (read once per process).
pub fn psd_floor() -> f64 {
    *PSD_FLOOR.get_or_init(|| {
        std::env::var("QCORR_PSD_FLOOR")
            .ok()
            .and_then(|s| s.parse::<f64>().ok())
            .filter(|v| v.is_finite() && *v >= 0.0)
            .unwrap_or(1e-10)
    })
}
