// Copyright 2026 qcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Seeded random matrices, vectors, and states for the optimizers and tests.
//!
//! All generators take a caller-owned RNG so results are reproducible from an
//! explicit seed.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::bipartite::{BipartiteDims, DensityMatrix, PureEnsemble, StateDims};
use crate::error::Result;
use crate::numerics::{CMatrix, CVector, C64};

/// Ginibre matrix: independent standard complex Gaussian entries.
pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Random Hermitian matrix with Gaussian entries.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CMatrix {
    let g = ginibre(rng, dim, dim);
    (&g + g.adjoint()).scale(0.5)
}

/// Random positive semidefinite matrix G G*.
pub fn random_psd<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CMatrix {
    let g = ginibre(rng, dim, dim);
    &g * g.adjoint()
}

/// Random unit vector.
pub fn random_pure<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CVector {
    loop {
        let v = CVector::from_fn(dim, |_, _| {
            C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        });
        let n = v.norm();
        if n > 1e-6 {
            return v.scale(1.0 / n);
        }
    }
}

/// Random density matrix of the given rank from the Hilbert-Schmidt family.
pub fn random_density<R: Rng + ?Sized>(
    rng: &mut R,
    dims: StateDims,
    rank: usize,
) -> Result<DensityMatrix> {
    let d = dims.total();
    let rank = rank.clamp(1, d);
    let g = ginibre(rng, d, rank);
    let mut m = &g * g.adjoint();
    let tr: f64 = m.diagonal().iter().map(|z| z.re).sum();
    m.scale_mut(1.0 / tr);
    DensityMatrix::new(m, dims)
}

/// Random isometry (m x r with W* W = I), from the QR factor of a Ginibre
/// matrix. Requires m >= r.
pub fn random_isometry<R: Rng + ?Sized>(rng: &mut R, m: usize, r: usize) -> CMatrix {
    assert!(m >= r, "isometry needs at least as many rows as columns");
    let g = ginibre(rng, m, r);
    g.qr().q()
}

/// Random probability vector of the given length.
pub fn random_simplex<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<f64> {
    let mut w: Vec<f64> = (0..len).map(|_| -rng.gen::<f64>().max(1e-12).ln()).collect();
    let s: f64 = w.iter().sum();
    for x in &mut w {
        *x /= s;
    }
    w
}

/// Random separable state built as a mixture of random pure product states.
/// Returns the state together with its defining product-pure ensemble, which
/// makes a valid warm start for the separability-zeroing optimizers.
pub fn random_separable_with_ensemble<R: Rng + ?Sized>(
    rng: &mut R,
    dims: BipartiteDims,
    terms: usize,
) -> Result<(DensityMatrix, PureEnsemble)> {
    let weights = random_simplex(rng, terms);
    let mut components = Vec::with_capacity(terms);
    for _ in 0..terms {
        let left = random_pure(rng, dims.d1());
        let right = random_pure(rng, dims.d2());
        let mut v = CVector::zeros(dims.total());
        for i in 0..dims.d1() {
            for j in 0..dims.d2() {
                v[i * dims.d2() + j] = left[i] * right[j];
            }
        }
        components.push(v);
    }
    let mut mix = CMatrix::zeros(dims.total(), dims.total());
    for (w, c) in weights.iter().zip(&components) {
        mix += (c * c.adjoint()).scale(*w);
    }
    let state = DensityMatrix::new(mix, StateDims::Bipartite(dims))?;
    let ensemble = PureEnsemble::new(weights, components, &state)?;
    Ok((state, ensemble))
}
