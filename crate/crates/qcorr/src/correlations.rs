// Copyright 2026 qcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Classical and quantum correlation coefficients, the separable shadow of a
//! pure-state ensemble, and the quantum-correlation distance obtained by
//! minimizing the expectation gap between a state and the shadows of its
//! decompositions.
//!
//! A bipartite state is separable exactly when that minimal gap vanishes for
//! every observable, so the distance acts as a quantitative witness of
//! non-classical correlations. The optimizer explores finitely supported
//! ensembles only, so reported distances are upper bounds; the only asserted
//! directions are the ones upper bounds support.

use crate::bipartite::{
    partial_trace_matrix, DensityMatrix, PureEnsemble, StateDims, Subsystem,
};
use crate::error::{Error, Result};
use crate::numerics::{kron, real_expectation, CMatrix, HermitianOperator, C64};
use crate::optimizer::{
    component_reductions, optimize_ensembles, Candidate, EnsembleObjective, EnsembleOptions,
    ProbeObserver,
};
use crate::tolerance::{VARIANCE_FLOOR, WEIGHT_DROP};

/// Finitely supported joint distribution of two real-valued variables.
#[derive(Debug, Clone)]
pub struct DiscreteJoint {
    atoms: Vec<(f64, f64, f64)>,
}

impl DiscreteJoint {
    /// Canonical m x n probability table: `grid[i][j] = P(X = xvals[i], Y = yvals[j])`.
    pub fn from_table(grid: &[Vec<f64>], xvals: &[f64], yvals: &[f64]) -> Result<Self> {
        if grid.len() != xvals.len() {
            return Err(Error::LengthMismatch {
                left: grid.len(),
                right: xvals.len(),
            });
        }
        let mut atoms = Vec::new();
        for (row, &x) in grid.iter().zip(xvals) {
            if row.len() != yvals.len() {
                return Err(Error::LengthMismatch {
                    left: row.len(),
                    right: yvals.len(),
                });
            }
            for (&p, &y) in row.iter().zip(yvals) {
                atoms.push((x, y, p));
            }
        }
        Self::from_atoms(atoms)
    }

    /// Diagonal joint carried by paired samples (x_k, y_k) with weights p_k.
    /// This is the quadrature form used to discretize functional pairs such
    /// as x -> (f(x), g(x)) on a grid.
    pub fn from_paired_samples(samples: &[(f64, f64, f64)]) -> Result<Self> {
        Self::from_atoms(samples.to_vec())
    }

    fn from_atoms(atoms: Vec<(f64, f64, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::BadWeights("empty joint distribution".into()));
        }
        let mut total = 0.0;
        for &(_, _, p) in &atoms {
            if !p.is_finite() || p < 0.0 {
                return Err(Error::BadWeights(format!("bad probability {p}")));
            }
            total += p;
        }
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::BadWeights(format!("probabilities sum to {total}")));
        }
        Ok(Self { atoms })
    }

    fn moment(&self, f: impl Fn(f64, f64) -> f64) -> f64 {
        self.atoms.iter().map(|&(x, y, p)| p * f(x, y)).sum()
    }
}

/// A correlation coefficient together with the pieces it was built from.
#[derive(Debug, Clone)]
pub struct CorrelationReport {
    /// The coefficient, in [-1, 1] up to roundoff.
    pub value: f64,
    /// Covariance E[XY] - E[X]E[Y].
    pub numerator: f64,
    /// The two marginal variances.
    pub variances: (f64, f64),
}

/// Pearson correlation coefficient of a discrete joint distribution.
pub fn classical_correlation(joint: &DiscreteJoint) -> Result<CorrelationReport> {
    let ex = joint.moment(|x, _| x);
    let ey = joint.moment(|_, y| y);
    let exy = joint.moment(|x, y| x * y);
    let vx = joint.moment(|x, _| x * x) - ex * ex;
    let vy = joint.moment(|_, y| y * y) - ey * ey;
    if vx <= VARIANCE_FLOOR || vy <= VARIANCE_FLOOR {
        return Err(Error::DegenerateVariance(vx.min(vy)));
    }
    let numerator = exy - ex * ey;
    Ok(CorrelationReport {
        value: numerator / (vx.sqrt() * vy.sqrt()),
        numerator,
        variances: (vx, vy),
    })
}

/// Correlation coefficient of the commuting pair A = a (x) 1 and
/// A' = 1 (x) a2 in the state rho:
/// `<(A - <A>)(A' - <A'>)> / (Var A)^(1/2) (Var A')^(1/2)`.
pub fn quantum_correlation_coefficient(
    rho: &DensityMatrix,
    a: &HermitianOperator,
    a2: &HermitianOperator,
) -> Result<CorrelationReport> {
    let dims = rho.bipartite_dims()?;
    if a.dim() != dims.d1() || a2.dim() != dims.d2() {
        return Err(Error::DimensionMismatch(format!(
            "observables {}:{} do not match factors {}:{}",
            a.dim(),
            a2.dim(),
            dims.d1(),
            dims.d2()
        )));
    }
    // Expectations against the reductions avoid forming full Kronecker
    // products for the single-factor terms.
    let red1 = partial_trace_matrix(rho.matrix(), dims, Subsystem::First);
    let red2 = partial_trace_matrix(rho.matrix(), dims, Subsystem::Second);
    let ea = real_expectation(&red1, a.matrix());
    let ea2 = real_expectation(&red2, a2.matrix());
    let eaa = real_expectation(rho.matrix(), &kron(a.matrix(), a2.matrix()));
    let va = real_expectation(&red1, &(a.matrix() * a.matrix())) - ea * ea;
    let va2 = real_expectation(&red2, &(a2.matrix() * a2.matrix())) - ea2 * ea2;
    if va <= VARIANCE_FLOOR || va2 <= VARIANCE_FLOOR {
        return Err(Error::DegenerateVariance(va.min(va2)));
    }
    let numerator = eaa - ea * ea2;
    Ok(CorrelationReport {
        value: numerator / (va.sqrt() * va2.sqrt()),
        numerator,
        variances: (va, va2),
    })
}

/// Replaces every pure component of an ensemble by the product of its two
/// reductions: `sum_i w_i tr_2(P_i) (x) tr_1(P_i)`.
///
/// The result is separable by construction and shares the ensemble's
/// single-factor marginals; only cross-factor correlations are discarded.
pub fn separable_shadow(ensemble: &PureEnsemble) -> Result<DensityMatrix> {
    let dims = match ensemble.dims() {
        StateDims::Bipartite(b) => b,
        StateDims::Single(_) => return Err(Error::MissingDims),
    };
    let d = dims.total();
    let mut acc = CMatrix::zeros(d, d);
    for (w, psi) in ensemble.weights().iter().zip(ensemble.components()) {
        let (x, y) = component_reductions(&psi.scale(w.sqrt()), dims);
        // x and y carry trace w, so the product term needs one 1/w.
        if *w <= WEIGHT_DROP {
            continue;
        }
        acc += kron(&x, &y).scale(1.0 / w);
    }
    let (state, _) = DensityMatrix::sanitized(acc, StateDims::Bipartite(dims))?;
    Ok(state)
}

/// Result of a quantum-correlation-distance minimization.
#[derive(Debug, Clone)]
pub struct DqcResult {
    /// |Tr(rho A) - Tr(shadow A)| at the best ensemble found.
    pub value: f64,
    /// Shadow of the best ensemble (a separable state).
    pub best_shadow: DensityMatrix,
    pub best_ensemble: PureEnsemble,
    pub restarts_used: usize,
    pub converged: bool,
}

struct ExpectationGap<'a> {
    observable: &'a CMatrix,
    target: f64,
    dims: crate::bipartite::BipartiteDims,
}

impl EnsembleObjective for ExpectationGap<'_> {
    fn eval(&self, cand: &Candidate) -> f64 {
        let mut shadow_expect = 0.0;
        for psi in &cand.raw {
            let w = psi.norm_squared();
            if w <= WEIGHT_DROP {
                continue;
            }
            let (x, y) = component_reductions(psi, self.dims);
            // Tr[(x (x) y) A] / w, with x, y the unnormalized reductions.
            let d2 = self.dims.d2();
            let mut acc = C64::new(0.0, 0.0);
            for a in 0..self.dims.d1() {
                for b in 0..self.dims.d1() {
                    for m in 0..d2 {
                        for n in 0..d2 {
                            acc += x[(a, b)] * y[(m, n)] * self.observable[(b * d2 + n, a * d2 + m)];
                        }
                    }
                }
            }
            shadow_expect += acc.re / w;
        }
        (self.target - shadow_expect).abs()
    }
}

/// Minimal expectation gap `|Tr(rho a) - Tr(shadow a)|` over the searched
/// pure-state ensembles of `rho`.
pub fn quantum_correlation_distance(
    rho: &DensityMatrix,
    a: &HermitianOperator,
    opts: &EnsembleOptions,
) -> Result<DqcResult> {
    quantum_correlation_distance_with(rho, a, opts, None, None)
}

/// Variant taking an optional warm-start ensemble and a probe observer that
/// sees every candidate ensemble the search evaluates.
pub fn quantum_correlation_distance_with(
    rho: &DensityMatrix,
    a: &HermitianOperator,
    opts: &EnsembleOptions,
    warm_start: Option<&PureEnsemble>,
    observer: Option<&mut ProbeObserver>,
) -> Result<DqcResult> {
    let dims = rho.bipartite_dims()?;
    if a.dim() != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "observable dimension {} does not match state dimension {}",
            a.dim(),
            rho.dim()
        )));
    }
    let objective = ExpectationGap {
        observable: a.matrix(),
        target: real_expectation(rho.matrix(), a.matrix()),
        dims,
    };
    let outcome = optimize_ensembles(rho, &objective, opts, warm_start, observer)?;
    let best_shadow = separable_shadow(&outcome.ensemble)?;
    // Recompute from the reported shadow so the published value and ensemble
    // are consistent by construction.
    let value = (objective.target - real_expectation(best_shadow.matrix(), a.matrix())).abs();
    Ok(DqcResult {
        value,
        best_shadow,
        best_ensemble: outcome.ensemble,
        restarts_used: outcome.restarts_used,
        converged: outcome.converged,
    })
}

/// Distance profile over a family of observables.
#[derive(Debug, Clone)]
pub struct DqcProfile {
    /// One result per family member, for the observables exactly as given.
    pub results: Vec<DqcResult>,
    /// Distances rescaled by each observable's operator norm, so members are
    /// comparable.
    pub normalized_scores: Vec<f64>,
    /// max of `normalized_scores`.
    pub score: f64,
}

pub fn quantum_correlation_profile(
    rho: &DensityMatrix,
    family: &[HermitianOperator],
    opts: &EnsembleOptions,
) -> Result<DqcProfile> {
    quantum_correlation_profile_with(rho, family, opts, None)
}

pub fn quantum_correlation_profile_with(
    rho: &DensityMatrix,
    family: &[HermitianOperator],
    opts: &EnsembleOptions,
    warm_start: Option<&PureEnsemble>,
) -> Result<DqcProfile> {
    let mut results = Vec::with_capacity(family.len());
    let mut normalized_scores = Vec::with_capacity(family.len());
    let mut score = 0.0f64;
    for a in family {
        let res = quantum_correlation_distance_with(rho, a, opts, warm_start, None)?;
        let norm = a.operator_norm();
        let scaled = if norm > 0.0 { res.value / norm } else { 0.0 };
        normalized_scores.push(scaled);
        score = score.max(scaled);
        results.push(res);
    }
    Ok(DqcProfile {
        results,
        normalized_scores,
        score,
    })
}

/// All Hermitian products P (x) Q where P, Q run over tensor words of Pauli
/// matrices on each factor. Requires both factor dimensions to be powers of
/// two; see [`hermitian_basis_family`] for the general case.
pub fn pauli_product_family(dims: crate::bipartite::BipartiteDims) -> Result<Vec<HermitianOperator>> {
    let w1 = pauli_words(dims.d1())?;
    let w2 = pauli_words(dims.d2())?;
    let mut out = Vec::with_capacity(w1.len() * w2.len());
    for p in &w1 {
        for q in &w2 {
            out.push(HermitianOperator::new(kron(p, q))?);
        }
    }
    Ok(out)
}

fn pauli_words(dim: usize) -> Result<Vec<CMatrix>> {
    if !dim.is_power_of_two() || dim < 2 {
        return Err(Error::BadDims(format!(
            "Pauli words need a power-of-two dimension, got {dim}"
        )));
    }
    let qubits = dim.trailing_zeros() as usize;
    let mut words: Vec<CMatrix> = vec![CMatrix::identity(1, 1)];
    for _ in 0..qubits {
        let mut next = Vec::with_capacity(words.len() * 4);
        for w in &words {
            for k in 0..4 {
                next.push(kron(w, &crate::numerics::pauli(k)));
            }
        }
        words = next;
    }
    Ok(words)
}

/// Product family built from generalized Gell-Mann matrices, covering factor
/// dimensions that are not powers of two.
pub fn hermitian_basis_family(
    dims: crate::bipartite::BipartiteDims,
) -> Result<Vec<HermitianOperator>> {
    let b1 = gell_mann(dims.d1());
    let b2 = gell_mann(dims.d2());
    let mut out = Vec::with_capacity(b1.len() * b2.len());
    for p in &b1 {
        for q in &b2 {
            out.push(HermitianOperator::new(kron(p, q))?);
        }
    }
    Ok(out)
}

fn gell_mann(d: usize) -> Vec<CMatrix> {
    let mut out = vec![CMatrix::identity(d, d)];
    for i in 0..d {
        for j in (i + 1)..d {
            let mut sym = CMatrix::zeros(d, d);
            sym[(i, j)] = C64::new(1.0, 0.0);
            sym[(j, i)] = C64::new(1.0, 0.0);
            out.push(sym);
            let mut asym = CMatrix::zeros(d, d);
            asym[(i, j)] = C64::new(0.0, -1.0);
            asym[(j, i)] = C64::new(0.0, 1.0);
            out.push(asym);
        }
    }
    for k in 1..d {
        let mut diag = CMatrix::zeros(d, d);
        let norm = (2.0 / (k as f64 * (k as f64 + 1.0))).sqrt();
        for i in 0..k {
            diag[(i, i)] = C64::new(norm, 0.0);
        }
        diag[(k, k)] = C64::new(-(k as f64) * norm, 0.0);
        out.push(diag);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartite::{max_entangled, partial_trace, singlet, Subsystem};
    use crate::numerics::{identity, pauli};
    use crate::random::{random_density, random_separable_with_ensemble};
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn proj1() -> HermitianOperator {
        let mut m = CMatrix::zeros(2, 2);
        m[(1, 1)] = C64::new(1.0, 0.0);
        HermitianOperator::new(m).unwrap()
    }

    #[test]
    fn product_joint_is_uncorrelated() {
        let px = [0.3, 0.7];
        let py = [0.2, 0.5, 0.3];
        let grid: Vec<Vec<f64>> = px.iter().map(|a| py.iter().map(|b| a * b).collect()).collect();
        let joint = DiscreteJoint::from_table(&grid, &[0.0, 1.0], &[-1.0, 0.0, 2.0]).unwrap();
        let rep = classical_correlation(&joint).unwrap();
        assert!(rep.value.abs() < 1e-14);
    }

    #[test]
    fn aligned_two_point_joint_is_maximally_correlated() {
        let grid = vec![vec![0.5, 0.0], vec![0.0, 0.5]];
        let joint = DiscreteJoint::from_table(&grid, &[0.0, 1.0], &[0.0, 1.0]).unwrap();
        let rep = classical_correlation(&joint).unwrap();
        assert_relative_eq!(rep.value, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn sine_cosine_pair_decorrelates_under_refinement() {
        // X = sin(2 pi u), Y = cos(2 pi u) for u uniform on [0, 1],
        // discretized by midpoint quadrature.
        let n = 10_000;
        let samples: Vec<(f64, f64, f64)> = (0..n)
            .map(|k| {
                let u = (k as f64 + 0.5) / n as f64;
                let t = 2.0 * std::f64::consts::PI * u;
                (t.sin(), t.cos(), 1.0 / n as f64)
            })
            .collect();
        let joint = DiscreteJoint::from_paired_samples(&samples).unwrap();
        let rep = classical_correlation(&joint).unwrap();
        assert!(rep.value.abs() < 1e-3, "got {}", rep.value);
    }

    #[test]
    fn degenerate_variance_is_reported() {
        let grid = vec![vec![1.0]];
        let joint = DiscreteJoint::from_table(&grid, &[0.5], &[0.5]).unwrap();
        assert!(matches!(
            classical_correlation(&joint),
            Err(Error::DegenerateVariance(_))
        ));
    }

    #[test]
    fn product_state_has_zero_quantum_correlation() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let r1 = random_density(&mut rng, StateDims::Single(2), 2).unwrap();
        let r2 = random_density(&mut rng, StateDims::Single(2), 2).unwrap();
        let rho = DensityMatrix::new(
            kron(r1.matrix(), r2.matrix()),
            StateDims::bipartite(2, 2).unwrap(),
        )
        .unwrap();
        let a = HermitianOperator::new(pauli(3)).unwrap();
        let rep = quantum_correlation_coefficient(&rho, &a, &a).unwrap();
        assert!(rep.value.abs() < 1e-12);
    }

    #[test]
    fn singlet_projectors_reach_extremal_correlation() {
        // <AA'> = 0 and <A> = <A'> = 1/2 with variances 1/4, so the signed
        // coefficient is -1 and its magnitude is maximal.
        let rep = quantum_correlation_coefficient(&singlet(), &proj1(), &proj1()).unwrap();
        assert_relative_eq!(rep.value, -1.0, epsilon = 1e-12);
        assert_relative_eq!(rep.value.abs(), 1.0, epsilon = 1e-12);
        assert_relative_eq!(rep.variances.0, 0.25, epsilon = 1e-12);
    }

    #[test]
    fn shadow_of_product_pure_ensemble_is_the_state() {
        let mut v = crate::numerics::CVector::zeros(4);
        v[0] = C64::new(1.0, 0.0); // |00>
        let rho = DensityMatrix::from_pure(&v, StateDims::bipartite(2, 2).unwrap()).unwrap();
        let ens = PureEnsemble::new(vec![1.0], vec![v], &rho).unwrap();
        let shadow = separable_shadow(&ens).unwrap();
        assert!((shadow.matrix() - rho.matrix()).norm() < 1e-12);
    }

    #[test]
    fn shadow_of_singlet_trivial_ensemble_is_maximally_mixed() {
        let rho = singlet();
        let (_, vecs) = rho.significant_spectrum();
        let ens = PureEnsemble::new(vec![1.0], vec![vecs[0].clone()], &rho).unwrap();
        let shadow = separable_shadow(&ens).unwrap();
        assert!((shadow.matrix() - identity(4).scale(0.25)).norm() < 1e-12);
    }

    #[test]
    fn shadow_of_classical_mixture_is_itself() {
        let mut v01 = crate::numerics::CVector::zeros(4);
        v01[1] = C64::new(1.0, 0.0);
        let mut v10 = crate::numerics::CVector::zeros(4);
        v10[2] = C64::new(1.0, 0.0);
        let dims = StateDims::bipartite(2, 2).unwrap();
        let mix = (&v01 * v01.adjoint() + &v10 * v10.adjoint()).scale(0.5);
        let rho = DensityMatrix::new(mix, dims).unwrap();
        let ens = PureEnsemble::new(vec![0.5, 0.5], vec![v01, v10], &rho).unwrap();
        let shadow = separable_shadow(&ens).unwrap();
        assert!((shadow.matrix() - rho.matrix()).norm() < 1e-12);
    }

    #[test]
    fn distance_vanishes_for_separable_with_warm_start() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let dims = crate::bipartite::BipartiteDims::new(2, 2).unwrap();
        let (rho, ens) = random_separable_with_ensemble(&mut rng, dims, 4).unwrap();
        let a = HermitianOperator::new(kron(&pauli(3), &pauli(3))).unwrap();
        let opts = EnsembleOptions::new(1).with_restarts(4).with_iter_cap(200);
        let res =
            quantum_correlation_distance_with(&rho, &a, &opts, Some(&ens), None).unwrap();
        assert!(res.value <= 1e-8, "got {}", res.value);
        assert!(res.converged);
    }

    #[test]
    fn singlet_distance_for_zz_is_one() {
        let a = HermitianOperator::new(kron(&pauli(3), &pauli(3))).unwrap();
        let opts = EnsembleOptions::new(7).with_restarts(4);
        let res = quantum_correlation_distance(&singlet(), &a, &opts).unwrap();
        assert_relative_eq!(res.value, 1.0, epsilon = 1e-9);
        // The unique decomposition of a pure state forces the shadow to be
        // the product of the two reductions.
        assert!((res.best_shadow.matrix() - identity(4).scale(0.25)).norm() < 1e-10);
    }

    #[test]
    fn distance_for_identity_observable_is_zero() {
        let a = HermitianOperator::new(identity(4)).unwrap();
        let opts = EnsembleOptions::new(7).with_restarts(2);
        let res = quantum_correlation_distance(&singlet(), &a, &opts).unwrap();
        assert!(res.value < 1e-12);
    }

    #[test]
    fn pure_state_distance_is_the_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let v = crate::random::random_pure(&mut rng, 4);
        let dims = StateDims::bipartite(2, 2).unwrap();
        let rho = DensityMatrix::from_pure(&v, dims).unwrap();
        let a = HermitianOperator::new(kron(&pauli(1), &pauli(2))).unwrap();
        let r1 = partial_trace(&rho, Subsystem::First).unwrap();
        let r2 = partial_trace(&rho, Subsystem::Second).unwrap();
        let closed = (real_expectation(rho.matrix(), a.matrix())
            - real_expectation(&kron(r1.matrix(), r2.matrix()), a.matrix()))
        .abs();
        let opts = EnsembleOptions::new(5).with_restarts(6);
        let res = quantum_correlation_distance(&rho, &a, &opts).unwrap();
        assert_relative_eq!(res.value, closed, epsilon = 1e-12);
    }

    #[test]
    fn restarts_never_increase_the_distance() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        let dims = StateDims::bipartite(2, 2).unwrap();
        let rho = random_density(&mut rng, dims, 3).unwrap();
        let a = HermitianOperator::new(kron(&pauli(3), &pauli(3))).unwrap();
        let few = quantum_correlation_distance(
            &rho,
            &a,
            &EnsembleOptions::new(9).with_restarts(2).with_iter_cap(300),
        )
        .unwrap();
        let many = quantum_correlation_distance(
            &rho,
            &a,
            &EnsembleOptions::new(9).with_restarts(8).with_iter_cap(300),
        )
        .unwrap();
        assert!(many.value <= few.value + 1e-12);
    }

    #[test]
    fn profile_scores() {
        let dims = crate::bipartite::BipartiteDims::new(2, 2).unwrap();
        let family = pauli_product_family(dims).unwrap();
        assert_eq!(family.len(), 16);

        // Maximally mixed is separable: profile score stays at zero.
        let mixed = DensityMatrix::new(identity(4).scale(0.25), StateDims::Bipartite(dims)).unwrap();
        let opts = EnsembleOptions::new(3).with_restarts(2).with_iter_cap(150);
        let profile = quantum_correlation_profile(&mixed, &family, &opts).unwrap();
        assert!(profile.score <= 1e-8, "got {}", profile.score);

        // The singlet profile contains the zz observable, so the maximal
        // normalized score reaches one.
        let profile = quantum_correlation_profile(&singlet(), &family, &opts).unwrap();
        assert!(profile.score >= 1.0 - 1e-9, "got {}", profile.score);
    }

    #[test]
    fn bell_probe_distances_respect_the_separability_gap() {
        // Every shadow of an ensemble of the maximally entangled state is a
        // separable state, and no separable state comes closer than 1/4 in
        // trace norm.
        let bell = max_entangled(2).unwrap();
        let a = HermitianOperator::new(kron(&pauli(3), &pauli(3))).unwrap();
        let mut min_dist = f64::INFINITY;
        let mut probes = 0usize;
        {
            let mut observer = |weights: &[f64], comps: &[crate::numerics::CVector]| {
                let ens = PureEnsemble::new(weights.to_vec(), comps.to_vec(), &bell).unwrap();
                let shadow = separable_shadow(&ens).unwrap();
                let dist =
                    crate::numerics::trace_norm(&(bell.matrix() - shadow.matrix()));
                min_dist = min_dist.min(dist);
                probes += 1;
            };
            let opts = EnsembleOptions::new(13).with_restarts(64);
            quantum_correlation_distance_with(&bell, &a, &opts, None, Some(&mut observer))
                .unwrap();
        }
        assert!(probes >= 64);
        assert!(min_dist >= 0.25, "got {min_dist}");
    }
}
