// Copyright 2026 qcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Entanglement of formation with a pluggable entropy functional, the
//! decomposition-free upper bound `m_a`, and PPT classification by two
//! independent routes: the direct partial transpose and the positivity
//! structure (CP and co-CP) of the entanglement mapping extracted from the
//! state by trace duality.
//!
//! Entanglement of formation is an infimum over pure-state decompositions,
//! searched with the same seeded ensemble optimizer as the correlation
//! distance; reported values are upper bounds on the true infimum.

use crate::bipartite::{
    partial_trace_matrix, BipartiteDims, DensityMatrix, PureEnsemble, Subsystem,
};
use crate::error::Result;
use crate::numerics::{hermitian_eig, CMatrix, HermitianOperator, C64};
use crate::optimizer::{
    component_reductions, optimize_ensembles, Candidate, EnsembleObjective, EnsembleOptions,
};
use crate::tolerance::{self, WEIGHT_DROP};

/// Concave, non-negative functionals that vanish exactly on pure states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntropyFunctional {
    /// -Tr(rho ln rho), natural logarithm.
    VonNeumann,
    /// 1 - Tr(rho^2).
    Linear,
}

/// Entropy of a density matrix under the chosen functional.
pub fn entropy(rho: &DensityMatrix, f: EntropyFunctional) -> f64 {
    entropy_of_matrix(rho.matrix(), f)
}

/// Entropy of a raw PSD unit-trace matrix.
pub fn entropy_of_matrix(m: &CMatrix, f: EntropyFunctional) -> f64 {
    match f {
        EntropyFunctional::Linear => {
            let purity: f64 = m.iter().map(|z| z.norm_sqr()).sum();
            1.0 - purity
        }
        EntropyFunctional::VonNeumann => {
            let op = match HermitianOperator::new(m.clone()) {
                Ok(op) => op,
                Err(_) => return f64::NAN,
            };
            hermitian_eig(&op)
                .eigenvalues
                .iter()
                .map(|&l| if l > 0.0 { -l * l.ln() } else { 0.0 })
                .sum()
        }
    }
}

/// Decomposition-free entanglement bound: the linear entropy of the
/// second-factor reduction, `tr_2[(tr_1 sigma) - (tr_1 sigma)^2]`.
///
/// This over-counts classical correlations (a classical mixture can score as
/// high as an entangled state), which is exactly why the infimum version
/// [`eof`] exists; see the module tests.
pub fn m_a(sigma: &DensityMatrix) -> Result<f64> {
    let dims = sigma.bipartite_dims()?;
    let red = partial_trace_matrix(sigma.matrix(), dims, Subsystem::Second);
    Ok(entropy_of_matrix(&red, EntropyFunctional::Linear))
}

/// Result of an entanglement-of-formation minimization.
#[derive(Debug, Clone)]
pub struct EofResult {
    /// Averaged component entropy at the best ensemble found.
    pub value: f64,
    pub best_ensemble: PureEnsemble,
    pub restarts_used: usize,
    pub converged: bool,
}

struct AverageEntropy {
    functional: EntropyFunctional,
    dims: BipartiteDims,
}

impl EnsembleObjective for AverageEntropy {
    fn eval(&self, cand: &Candidate) -> f64 {
        let mut acc = 0.0;
        for psi in &cand.raw {
            let w = psi.norm_squared();
            if w <= WEIGHT_DROP {
                continue;
            }
            let (x, _) = component_reductions(psi, self.dims);
            // x has trace w; the normalized first-factor reduction is x / w.
            match self.functional {
                EntropyFunctional::Linear => {
                    let sq: f64 = x.iter().map(|z| z.norm_sqr()).sum();
                    acc += w - sq / w;
                }
                EntropyFunctional::VonNeumann => {
                    let op = HermitianOperator::new(x.scale(1.0 / w))
                        .expect("component reduction is Hermitian");
                    acc += w * hermitian_eig(&op)
                        .eigenvalues
                        .iter()
                        .map(|&l| if l > 0.0 { -l * l.ln() } else { 0.0 })
                        .sum::<f64>();
                }
            }
        }
        acc
    }
}

/// Entanglement of formation: the minimum over searched pure-state ensembles
/// of the weighted average entropy of the first-factor component reductions.
pub fn eof(
    rho: &DensityMatrix,
    f: EntropyFunctional,
    opts: &EnsembleOptions,
) -> Result<EofResult> {
    eof_with(rho, f, opts, None)
}

/// Variant accepting a warm-start ensemble; the result never exceeds the
/// warm start's objective value.
pub fn eof_with(
    rho: &DensityMatrix,
    f: EntropyFunctional,
    opts: &EnsembleOptions,
    warm_start: Option<&PureEnsemble>,
) -> Result<EofResult> {
    let dims = rho.bipartite_dims()?;
    let objective = AverageEntropy {
        functional: f,
        dims,
    };
    let outcome = optimize_ensembles(rho, &objective, opts, warm_start, None)?;
    Ok(EofResult {
        value: outcome.value.max(0.0),
        best_ensemble: outcome.ensemble,
        restarts_used: outcome.restarts_used,
        converged: outcome.converged,
    })
}

/// PPT classification of a bipartite state.
#[derive(Debug, Clone)]
pub struct PptVerdict {
    pub is_ppt: bool,
    /// Smallest eigenvalue of the criterion: the partial-transpose spectrum
    /// for the direct route, the smaller of the two Choi minima for the
    /// mapping route.
    pub min_pt_eigenvalue: f64,
    /// Minimum eigenvalue of the Choi matrix of the entanglement mapping
    /// (complete positivity side). This Choi matrix is the partial transpose
    /// of the state conjugated by the factor swap, so this side carries the
    /// partial-transpose spectrum. Absent for the direct route.
    pub choi_cp_min: Option<f64>,
    /// Minimum eigenvalue of the Choi matrix of the mapping composed with
    /// the transpose (complete co-positivity side); non-negative for every
    /// valid state. Absent for the direct route.
    pub choi_cocp_min: Option<f64>,
}

/// PPT verdict from the spectrum of the partial transpose.
pub fn ppt_direct(rho: &DensityMatrix) -> Result<PptVerdict> {
    let pt = crate::bipartite::partial_transpose(rho)?;
    let min = hermitian_eig(&pt).min_eigenvalue();
    Ok(PptVerdict {
        is_ppt: min >= -tolerance::psd_floor(),
        min_pt_eigenvalue: min,
        choi_cp_min: None,
        choi_cocp_min: None,
    })
}

/// The map `B -> phi(B)` on the second factor determined by the duality
/// `Tr[rho (A (x) B)] = Tr_1[A phi(B)]` for all A, B.
///
/// The action matrix sends row-major vectorized d2 x d2 operators to
/// row-major vectorized d1 x d1 operators.
#[derive(Debug, Clone)]
pub struct EntanglementMap {
    dims: BipartiteDims,
    action: CMatrix,
}

impl EntanglementMap {
    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    pub fn action(&self) -> &CMatrix {
        &self.action
    }

    /// phi(B).
    pub fn apply(&self, b: &CMatrix) -> CMatrix {
        let (d1, d2) = (self.dims.d1(), self.dims.d2());
        assert_eq!(b.nrows(), d2);
        assert_eq!(b.ncols(), d2);
        let mut out = CMatrix::zeros(d1, d1);
        for i in 0..d1 {
            for j in 0..d1 {
                let mut acc = C64::new(0.0, 0.0);
                for m in 0..d2 {
                    for n in 0..d2 {
                        acc += self.action[(i * d1 + j, m * d2 + n)] * b[(m, n)];
                    }
                }
                out[(i, j)] = acc;
            }
        }
        out
    }
}

/// Extracts the entanglement mapping of a state by solving the duality
/// relation on the matrix-unit basis: the (i, j) entry of phi(E_kl) is the
/// expectation of E_ji (x) E_kl in the state, which picks out one matrix
/// entry of the state.
pub fn entanglement_mapping(rho: &DensityMatrix) -> Result<EntanglementMap> {
    let dims = rho.bipartite_dims()?;
    let (d1, d2) = (dims.d1(), dims.d2());
    let m = rho.matrix();
    let mut action = CMatrix::zeros(d1 * d1, d2 * d2);
    for k in 0..d2 {
        for l in 0..d2 {
            for i in 0..d1 {
                for j in 0..d1 {
                    action[(i * d1 + j, k * d2 + l)] = m[(i * d2 + l, j * d2 + k)];
                }
            }
        }
    }
    Ok(EntanglementMap { dims, action })
}

/// PPT verdict from the positivity structure of the entanglement mapping:
/// the state is PPT exactly when the mapping is both completely positive and
/// completely co-positive, tested through the two Choi matrices.
pub fn cp_cocp_verdict(map: &EntanglementMap) -> PptVerdict {
    let (d1, d2) = (map.dims.d1(), map.dims.d2());
    let n = d1 * d2;
    let mut choi_cp = CMatrix::zeros(n, n);
    let mut choi_cocp = CMatrix::zeros(n, n);
    for i in 0..d2 {
        for j in 0..d2 {
            let mut unit = CMatrix::zeros(d2, d2);
            unit[(i, j)] = C64::new(1.0, 0.0);
            let block = map.apply(&unit);
            let mut unit_t = CMatrix::zeros(d2, d2);
            unit_t[(j, i)] = C64::new(1.0, 0.0);
            let block_t = map.apply(&unit_t);
            for a in 0..d1 {
                for b in 0..d1 {
                    choi_cp[(i * d1 + a, j * d1 + b)] = block[(a, b)];
                    choi_cocp[(i * d1 + a, j * d1 + b)] = block_t[(a, b)];
                }
            }
        }
    }
    let floor = tolerance::psd_floor();
    let cp_min = min_eig(choi_cp);
    let cocp_min = min_eig(choi_cocp);
    PptVerdict {
        is_ppt: cp_min >= -floor && cocp_min >= -floor,
        min_pt_eigenvalue: cp_min.min(cocp_min),
        choi_cp_min: Some(cp_min),
        choi_cocp_min: Some(cocp_min),
    }
}

fn min_eig(m: CMatrix) -> f64 {
    let op = HermitianOperator::new(m).expect("Choi matrix of a state map is Hermitian");
    hermitian_eig(&op).min_eigenvalue()
}
