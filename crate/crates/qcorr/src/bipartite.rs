// Copyright 2026 qcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Bipartite states and their decompositions: partial trace and transpose,
//! maximally entangled and separable builders, and pure-state ensembles of a
//! density matrix.
//!
//! Composite indices follow the convention `index = i1 * d2 + i2`: the first
//! subsystem is the slow index, matching the Kronecker product in
//! [`crate::numerics::kron`].

use crate::error::{Error, Result};
use crate::numerics::{
    self, hermitian_eig, kron, trace_norm, CMatrix, CVector, HermitianOperator, C64,
};
use crate::tolerance::{
    self, BARYCENTER_TOL, ORTHONORMAL_TOL, RANK_RTOL, TRACE_TOL, UNIT_NORM_TOL, WEIGHT_DROP,
};

/// Dimensions of the two tensor factors. Both must be at least 2, so each
/// factor is a genuine quantum subsystem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BipartiteDims {
    d1: usize,
    d2: usize,
}

impl BipartiteDims {
    pub fn new(d1: usize, d2: usize) -> Result<Self> {
        if d1 < 2 || d2 < 2 {
            return Err(Error::BadDims(format!(
                "both factors must have dimension >= 2, got {d1} x {d2}"
            )));
        }
        Ok(Self { d1, d2 })
    }

    pub fn d1(&self) -> usize {
        self.d1
    }

    pub fn d2(&self) -> usize {
        self.d2
    }

    pub fn total(&self) -> usize {
        self.d1 * self.d2
    }
}

/// Dimension tag of a state: a single system or a two-factor composite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateDims {
    Single(usize),
    Bipartite(BipartiteDims),
}

impl StateDims {
    pub fn bipartite(d1: usize, d2: usize) -> Result<Self> {
        Ok(StateDims::Bipartite(BipartiteDims::new(d1, d2)?))
    }

    pub fn total(&self) -> usize {
        match self {
            StateDims::Single(d) => *d,
            StateDims::Bipartite(b) => b.total(),
        }
    }
}

/// Density matrix: positive semidefinite, unit trace, optionally tagged with
/// bipartite dimensions.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    dims: StateDims,
    op: HermitianOperator,
}

impl DensityMatrix {
    /// Strict constructor: Hermitian within tolerance, eigenvalues above
    /// `-psd_floor`, trace within `TRACE_TOL` of 1.
    pub fn new(m: CMatrix, dims: StateDims) -> Result<Self> {
        let op = HermitianOperator::new(m)?;
        Self::from_hermitian(op, dims)
    }

    pub fn from_hermitian(op: HermitianOperator, dims: StateDims) -> Result<Self> {
        if op.dim() != dims.total() {
            return Err(Error::DimensionMismatch(format!(
                "state dimension {} does not match tag {}",
                op.dim(),
                dims.total()
            )));
        }
        let tr = op.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::TraceNotOne { trace: tr });
        }
        let min = hermitian_eig(&op).min_eigenvalue();
        if min < -tolerance::psd_floor() {
            return Err(Error::NotPositive {
                min_eigenvalue: min,
            });
        }
        Ok(Self { dims, op })
    }

    /// Repairing constructor for matrices produced by floating-point
    /// arithmetic: eigenvalues in `[-psd_floor, 0)` are clamped to zero and
    /// the trace is renormalized. Returns the repaired state and the size of
    /// the correction that was applied.
    pub fn sanitized(m: CMatrix, dims: StateDims) -> Result<(Self, f64)> {
        let op = HermitianOperator::new(m)?;
        if op.dim() != dims.total() {
            return Err(Error::DimensionMismatch(format!(
                "state dimension {} does not match tag {}",
                op.dim(),
                dims.total()
            )));
        }
        let floor = tolerance::psd_floor();
        let eig = hermitian_eig(&op);
        let min = eig.min_eigenvalue();
        if min < -floor {
            return Err(Error::NotPositive {
                min_eigenvalue: min,
            });
        }
        let mut correction = 0.0f64;
        let mut fixed = if min < 0.0 {
            correction = -min;
            eig.map_eigenvalues(|l| l.max(0.0))
        } else {
            op.matrix().clone()
        };
        let tr: f64 = fixed.diagonal().iter().map(|z| z.re).sum();
        if tr <= 0.0 {
            return Err(Error::TraceNotOne { trace: tr });
        }
        correction = correction.max((tr - 1.0).abs());
        if (tr - 1.0).abs() > 0.0 {
            fixed.scale_mut(1.0 / tr);
        }
        if correction > 0.0 {
            log::debug!("density matrix sanitized, correction {correction:.3e}");
        }
        let op = HermitianOperator::new(fixed)?;
        Ok((Self { dims, op }, correction))
    }

    /// Rank-one projector onto a unit vector.
    pub fn from_pure(v: &CVector, dims: StateDims) -> Result<Self> {
        if v.len() != dims.total() {
            return Err(Error::DimensionMismatch(format!(
                "vector length {} does not match tag {}",
                v.len(),
                dims.total()
            )));
        }
        let n = v.norm();
        if (n - 1.0).abs() > UNIT_NORM_TOL {
            return Err(Error::InvalidParameter(format!(
                "pure-state vector has norm {n}, expected 1"
            )));
        }
        let proj = (v * v.adjoint()).scale(1.0 / (n * n));
        Self::new(proj, dims)
    }

    pub fn dims(&self) -> StateDims {
        self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.total()
    }

    /// The bipartite tag, or `MissingDims` when the state is untagged.
    pub fn bipartite_dims(&self) -> Result<BipartiteDims> {
        match self.dims {
            StateDims::Bipartite(b) => Ok(b),
            StateDims::Single(_) => Err(Error::MissingDims),
        }
    }

    /// Returns a copy of this state re-tagged with bipartite dimensions.
    pub fn with_bipartite_dims(&self, d1: usize, d2: usize) -> Result<Self> {
        let dims = BipartiteDims::new(d1, d2)?;
        if dims.total() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} tag does not cover dimension {}",
                d1,
                d2,
                self.dim()
            )));
        }
        Ok(Self {
            dims: StateDims::Bipartite(dims),
            op: self.op.clone(),
        })
    }

    pub fn matrix(&self) -> &CMatrix {
        self.op.matrix()
    }

    pub fn hermitian(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn trace(&self) -> f64 {
        self.op.trace()
    }

    pub fn purity(&self) -> f64 {
        self.matrix().iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn is_pure(&self) -> bool {
        self.purity() > 1.0 - 1e-10
    }

    /// Eigenpairs above the relative rank threshold, largest first.
    pub fn significant_spectrum(&self) -> (Vec<f64>, Vec<CVector>) {
        let eig = hermitian_eig(&self.op);
        let lmax = eig.eigenvalues.last().copied().unwrap_or(0.0).max(0.0);
        let cut = RANK_RTOL * lmax;
        let mut vals = Vec::new();
        let mut vecs = Vec::new();
        for (k, &l) in eig.eigenvalues.iter().enumerate().rev() {
            if l > cut {
                vals.push(l);
                vecs.push(eig.eigenvectors.column(k).into_owned());
            }
        }
        (vals, vecs)
    }

    pub fn rank(&self) -> usize {
        self.significant_spectrum().0.len()
    }
}

/// Which factor survives a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// Reduction of a bipartite state to one subsystem.
pub fn partial_trace(rho: &DensityMatrix, keep: Subsystem) -> Result<DensityMatrix> {
    let dims = rho.bipartite_dims()?;
    let reduced = partial_trace_matrix(rho.matrix(), dims, keep);
    let d = match keep {
        Subsystem::First => dims.d1(),
        Subsystem::Second => dims.d2(),
    };
    DensityMatrix::new(reduced, StateDims::Single(d))
}

/// Partial trace on a raw matrix (not necessarily a state).
pub fn partial_trace_matrix(m: &CMatrix, dims: BipartiteDims, keep: Subsystem) -> CMatrix {
    let (d1, d2) = (dims.d1(), dims.d2());
    match keep {
        Subsystem::First => {
            let mut out = CMatrix::zeros(d1, d1);
            for i in 0..d1 {
                for j in 0..d1 {
                    let mut acc = C64::new(0.0, 0.0);
                    for k in 0..d2 {
                        acc += m[(i * d2 + k, j * d2 + k)];
                    }
                    out[(i, j)] = acc;
                }
            }
            out
        }
        Subsystem::Second => {
            let mut out = CMatrix::zeros(d2, d2);
            for i in 0..d2 {
                for j in 0..d2 {
                    let mut acc = C64::new(0.0, 0.0);
                    for k in 0..d1 {
                        acc += m[(k * d2 + i, k * d2 + j)];
                    }
                    out[(i, j)] = acc;
                }
            }
            out
        }
    }
}

/// Transpose of the second factor in the computational basis. The result is
/// Hermitian with unit trace but not necessarily positive.
pub fn partial_transpose(rho: &DensityMatrix) -> Result<HermitianOperator> {
    let dims = rho.bipartite_dims()?;
    HermitianOperator::new(partial_transpose_matrix(rho.matrix(), dims))
}

pub fn partial_transpose_matrix(m: &CMatrix, dims: BipartiteDims) -> CMatrix {
    let (d1, d2) = (dims.d1(), dims.d2());
    let mut out = CMatrix::zeros(m.nrows(), m.ncols());
    for i1 in 0..d1 {
        for j1 in 0..d1 {
            for i2 in 0..d2 {
                for j2 in 0..d2 {
                    out[(i1 * d2 + i2, j1 * d2 + j2)] = m[(i1 * d2 + j2, j1 * d2 + i2)];
                }
            }
        }
    }
    out
}

/// Projector onto the canonical maximally entangled vector
/// (1/sqrt(n)) sum_i e_i (x) f_i on an n x n composite.
pub fn max_entangled(n: usize) -> Result<DensityMatrix> {
    if n < 2 {
        return Err(Error::BadDims("maximally entangled state needs n >= 2".into()));
    }
    let mut v = CVector::zeros(n * n);
    let amp = C64::new(1.0 / (n as f64).sqrt(), 0.0);
    for i in 0..n {
        v[i * n + i] = amp;
    }
    DensityMatrix::from_pure(&v, StateDims::bipartite(n, n)?)
}

/// The two-qubit singlet (|10> - |01>)/sqrt(2), the sign-flipped permutation
/// variant of [`max_entangled`] at n = 2.
pub fn singlet() -> DensityMatrix {
    let mut v = CVector::zeros(4);
    let amp = 1.0 / 2.0f64.sqrt();
    v[2] = C64::new(amp, 0.0); // |10>
    v[1] = C64::new(-amp, 0.0); // |01>
    DensityMatrix::from_pure(&v, StateDims::bipartite(2, 2).unwrap()).unwrap()
}

/// Convex mixture of product states, sum_i w_i rho1_i (x) rho2_i.
pub fn separable_from_ensemble(
    weights: &[f64],
    left_states: &[DensityMatrix],
    right_states: &[DensityMatrix],
) -> Result<DensityMatrix> {
    if left_states.len() != right_states.len() {
        return Err(Error::LengthMismatch {
            left: left_states.len(),
            right: right_states.len(),
        });
    }
    if weights.len() != left_states.len() {
        return Err(Error::LengthMismatch {
            left: weights.len(),
            right: left_states.len(),
        });
    }
    if weights.is_empty() {
        return Err(Error::BadWeights("empty mixture".into()));
    }
    validate_weights(weights)?;
    let d1 = left_states[0].dim();
    let d2 = right_states[0].dim();
    let mut acc = CMatrix::zeros(d1 * d2, d1 * d2);
    for ((w, l), r) in weights.iter().zip(left_states).zip(right_states) {
        if l.dim() != d1 || r.dim() != d2 {
            return Err(Error::DimensionMismatch(
                "mixture terms have inconsistent factor dimensions".into(),
            ));
        }
        acc += kron(l.matrix(), r.matrix()).scale(*w);
    }
    DensityMatrix::new(acc, StateDims::bipartite(d1, d2)?)
}

fn validate_weights(weights: &[f64]) -> Result<()> {
    if weights.iter().any(|w| !w.is_finite() || *w < -1e-12) {
        return Err(Error::BadWeights("negative or non-finite weight".into()));
    }
    let s: f64 = weights.iter().sum();
    if (s - 1.0).abs() > 1e-8 {
        return Err(Error::BadWeights(format!("weights sum to {s}")));
    }
    Ok(())
}

/// Finitely supported pure-state decomposition of a density matrix.
///
/// Holds weights w_i >= 0 summing to one and unit vectors psi_i whose mixture
/// sum_i w_i |psi_i><psi_i| reproduces the declared barycenter.
#[derive(Debug, Clone)]
pub struct PureEnsemble {
    weights: Vec<f64>,
    components: Vec<CVector>,
    dims: StateDims,
}

impl PureEnsemble {
    /// Validates norms, weights, and barycenter reproduction (trace norm
    /// within `BARYCENTER_TOL`).
    pub fn new(
        weights: Vec<f64>,
        components: Vec<CVector>,
        barycenter: &DensityMatrix,
    ) -> Result<Self> {
        if weights.len() != components.len() {
            return Err(Error::LengthMismatch {
                left: weights.len(),
                right: components.len(),
            });
        }
        if weights.is_empty() {
            return Err(Error::BadWeights("empty ensemble".into()));
        }
        validate_weights(&weights)?;
        let d = barycenter.dim();
        for c in &components {
            if c.len() != d {
                return Err(Error::DimensionMismatch(
                    "ensemble component has wrong dimension".into(),
                ));
            }
            if (c.norm() - 1.0).abs() > UNIT_NORM_TOL {
                return Err(Error::InvalidParameter(format!(
                    "ensemble component has norm {}",
                    c.norm()
                )));
            }
        }
        let ens = Self {
            weights,
            components,
            dims: barycenter.dims(),
        };
        let err = trace_norm(&(ens.mixture() - barycenter.matrix()));
        if err > BARYCENTER_TOL {
            return Err(Error::InvalidParameter(format!(
                "ensemble mixture misses its barycenter by {err:.3e} in trace norm"
            )));
        }
        Ok(ens)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn components(&self) -> &[CVector] {
        &self.components
    }

    pub fn dims(&self) -> StateDims {
        self.dims
    }

    /// sum_i w_i |psi_i><psi_i|.
    pub fn mixture(&self) -> CMatrix {
        let d = self.dims.total();
        let mut acc = CMatrix::zeros(d, d);
        for (w, c) in self.weights.iter().zip(&self.components) {
            acc += (c * c.adjoint()).scale(*w);
        }
        acc
    }
}

/// Orthogonal decomposition of a state along a chosen orthonormal basis.
///
/// Component i is the normalization of sqrt(rho) e_i with weight
/// <e_i | rho | e_i>; zero-weight terms are dropped. Different bases give
/// different, equally valid decompositions of the same state.
pub fn gns_orthogonal_decomposition(
    rho: &DensityMatrix,
    basis: &[CVector],
) -> Result<PureEnsemble> {
    let d = rho.dim();
    if basis.len() != d {
        return Err(Error::BadBasis(basis.len() as f64 - d as f64));
    }
    let mut worst = 0.0f64;
    for (i, a) in basis.iter().enumerate() {
        if a.len() != d {
            return Err(Error::DimensionMismatch(
                "basis vector has wrong dimension".into(),
            ));
        }
        for (j, b) in basis.iter().enumerate() {
            let overlap = a.dotc(b);
            let expect = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((overlap - C64::new(expect, 0.0)).norm());
        }
    }
    if worst > ORTHONORMAL_TOL {
        return Err(Error::BadBasis(worst));
    }
    // Square root through the rank-truncated spectrum: bare sqrt turns
    // noise eigenvalues of order 1e-16 into 1e-8 contaminations of the
    // components.
    let (vals, vecs) = rho.significant_spectrum();
    let mut root = CMatrix::zeros(d, d);
    for (l, v) in vals.iter().zip(&vecs) {
        root += (v * v.adjoint()).scale(l.sqrt());
    }
    let mut weights: Vec<f64> = Vec::new();
    let mut components: Vec<CVector> = Vec::new();
    for e in basis {
        let psi = &root * e;
        let w = psi.norm_squared();
        if w <= WEIGHT_DROP {
            continue;
        }
        let unit = psi.scale(1.0 / w.sqrt());
        // The ensemble stands for a finitely supported measure, so
        // components equal up to phase are one atom: merge their weights.
        // For a pure state every basis vector maps to the state itself and
        // the decomposition collapses to a single atom.
        if let Some(k) = components
            .iter()
            .position(|c| c.dotc(&unit).norm() > 1.0 - 1e-10)
        {
            weights[k] += w;
        } else {
            weights.push(w);
            components.push(unit);
        }
    }
    PureEnsemble::new(weights, components, rho)
}

/// Every size-m pure-state ensemble of rho comes from an m x r isometry
/// applied to the spectral decomposition; this builds that ensemble.
///
/// Given rho = sum_j lambda_j |v_j><v_j| restricted to its rank-r support,
/// component i is the normalization of sum_j mix[(i, j)] sqrt(lambda_j) v_j
/// with weight equal to its squared norm.
pub fn ensemble_from_isometry(rho: &DensityMatrix, mix: &CMatrix) -> Result<PureEnsemble> {
    let (vals, vecs) = rho.significant_spectrum();
    let r = vals.len();
    if mix.ncols() != r {
        return Err(Error::NotIsometry(format!(
            "mix has {} columns but the state has rank {r}",
            mix.ncols()
        )));
    }
    if mix.nrows() < r {
        return Err(Error::NotIsometry(format!(
            "mix has {} rows, fewer than its {r} columns",
            mix.nrows()
        )));
    }
    let gram = mix.adjoint() * mix;
    let defect = (&gram - CMatrix::identity(r, r)).norm();
    if defect > tolerance::ISOMETRY_TOL {
        return Err(Error::NotIsometry(format!(
            "mix* mix differs from identity by {defect:.3e}"
        )));
    }
    let d = rho.dim();
    // Columns of B are sqrt(lambda_j) v_j; unnormalized components are B w_i*.
    let mut b = CMatrix::zeros(d, r);
    for (j, (l, v)) in vals.iter().zip(&vecs).enumerate() {
        let s = C64::new(l.sqrt(), 0.0);
        for a in 0..d {
            b[(a, j)] = v[a] * s;
        }
    }
    let mut weights = Vec::new();
    let mut components = Vec::new();
    for i in 0..mix.nrows() {
        let mut psi = CVector::zeros(d);
        for j in 0..r {
            let w = mix[(i, j)];
            for a in 0..d {
                psi[a] += w * b[(a, j)];
            }
        }
        let w = psi.norm_squared();
        if w <= WEIGHT_DROP {
            continue;
        }
        weights.push(w);
        components.push(psi.scale(1.0 / w.sqrt()));
    }
    PureEnsemble::new(weights, components, rho)
}

/// Expectation Tr(rho A) as a real number.
pub fn expectation(rho: &DensityMatrix, a: &CMatrix) -> f64 {
    numerics::real_expectation(rho.matrix(), a)
}
