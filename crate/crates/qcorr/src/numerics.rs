// Copyright 2026 qcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex Hermitian linear algebra: eigendecomposition, spectral
//! matrix functions, Kronecker products, and the trace norm.
//!
//! Everything in scope is small (dimension at most a few hundred), so all
//! storage is dense and all operations are pure functions of their inputs.

use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{Error, Result};
use crate::tolerance::{self, HERMITICITY_RTOL};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Complex square matrix validated (and symmetrized) to be self-adjoint.
///
/// Construction symmetrizes to (M + M*)/2 and records the pre-symmetrization
/// defect, so downstream spectral routines always run on the Hermitian path.
#[derive(Debug, Clone)]
pub struct HermitianOperator {
    mat: CMatrix,
    defect: f64,
}

impl HermitianOperator {
    /// Validates hermiticity of `m` within `HERMITICITY_RTOL` relative to the
    /// largest entry, then stores the symmetrized matrix.
    pub fn new(m: CMatrix) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(Error::DimensionMismatch(format!(
                "hermitian operator must be square and non-empty, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        let scale = m.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
        let defect = hermiticity_defect(&m);
        let tol = HERMITICITY_RTOL * scale.max(1e-300);
        if defect > tol {
            return Err(Error::NonHermitian { defect, tol });
        }
        Ok(Self::symmetrize(m, defect))
    }

    fn symmetrize(m: CMatrix, defect: f64) -> Self {
        let sym = (&m + m.adjoint()).scale(0.5);
        Self { mat: sym, defect }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }

    /// Pre-symmetrization hermiticity defect recorded at construction.
    pub fn defect(&self) -> f64 {
        self.defect
    }

    pub fn trace(&self) -> f64 {
        self.mat.diagonal().iter().map(|z| z.re).sum()
    }

    /// Largest singular value, equal to max |eigenvalue| for Hermitian input.
    pub fn operator_norm(&self) -> f64 {
        hermitian_eig(self)
            .eigenvalues
            .iter()
            .map(|l| l.abs())
            .fold(0.0, f64::max)
    }
}

fn hermiticity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let d = (m[(i, j)] - m[(j, i)].conj()).norm();
            worst = worst.max(d);
        }
    }
    worst
}

/// Eigendecomposition of a Hermitian operator.
///
/// Eigenvalues are real and ascending; `eigenvectors` holds the matching
/// orthonormal eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
}

impl SpectralDecomposition {
    /// Rebuilds V diag(f(lambda)) V*.
    pub fn map_eigenvalues(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let d = self.eigenvectors.nrows();
        let mut scaled = self.eigenvectors.clone();
        for (k, lam) in self.eigenvalues.iter().enumerate() {
            let fl = C64::new(f(*lam), 0.0);
            for i in 0..d {
                scaled[(i, k)] *= fl;
            }
        }
        &scaled * self.eigenvectors.adjoint()
    }

    pub fn reconstruct(&self) -> CMatrix {
        self.map_eigenvalues(|l| l)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }
}

/// Eigendecomposition of a Hermitian operator, eigenvalues ascending.
pub fn hermitian_eig(op: &HermitianOperator) -> SpectralDecomposition {
    let se = op.matrix().clone().symmetric_eigen();
    let n = se.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[a].total_cmp(&se.eigenvalues[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| se.eigenvalues[k]).collect();
    let mut eigenvectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        eigenvectors.set_column(dst, &se.eigenvectors.column(src));
    }
    SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    }
}

/// Scalar functions applied through the spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarFn {
    /// Principal square root; requires a positive semidefinite spectrum.
    Sqrt,
    /// Matrix exponential.
    Exp,
    /// lambda -> exp(-beta * lambda).
    NegExpScaled(f64),
}

/// Applies `f` to the eigenvalues of `op`, keeping its eigenvectors.
///
/// For `Sqrt`, eigenvalues in `[-psd_floor, 0)` are clamped to zero and the
/// correction is logged; anything below the floor is an error.
pub fn matrix_function(op: &HermitianOperator, f: ScalarFn) -> Result<HermitianOperator> {
    let eig = hermitian_eig(op);
    if let ScalarFn::Sqrt = f {
        let floor = tolerance::psd_floor();
        let min = eig.min_eigenvalue();
        if min < -floor {
            return Err(Error::NegativeSpectrum {
                eigenvalue: min,
                floor,
            });
        }
        if min < 0.0 {
            log::debug!("matrix sqrt: clamped eigenvalue {min:.3e} to 0");
        }
    }
    let out = match f {
        ScalarFn::Sqrt => eig.map_eigenvalues(|l| l.max(0.0).sqrt()),
        ScalarFn::Exp => eig.map_eigenvalues(f64::exp),
        ScalarFn::NegExpScaled(beta) => eig.map_eigenvalues(|l| (-beta * l).exp()),
    };
    // Spectral synthesis of a real function is Hermitian up to roundoff.
    Ok(HermitianOperator::symmetrize(out, 0.0))
}

/// Standard Kronecker product; the left factor is the slow index.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Sum of singular values. For Hermitian input this is the sum of the
/// absolute eigenvalues.
pub fn trace_norm(m: &CMatrix) -> f64 {
    assert_eq!(m.nrows(), m.ncols(), "trace norm needs a square matrix");
    // Singular values are the square roots of the spectrum of M*M.
    let gram = m.adjoint() * m;
    let op = HermitianOperator::symmetrize(gram, 0.0);
    hermitian_eig(&op)
        .eigenvalues
        .iter()
        .map(|l| l.max(0.0).sqrt())
        .sum()
}

/// Frobenius inner-product trace Tr(A B), returned as a complex number.
pub fn trace_of_product(a: &CMatrix, b: &CMatrix) -> C64 {
    debug_assert_eq!(a.ncols(), b.nrows());
    let n = a.nrows();
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..n {
        for k in 0..a.ncols() {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

/// Real expectation Tr(rho A) for Hermitian factors.
pub fn real_expectation(rho: &CMatrix, a: &CMatrix) -> f64 {
    trace_of_product(rho, a).re
}

pub fn identity(d: usize) -> CMatrix {
    CMatrix::identity(d, d)
}

/// Complex matrix from a row-major slice of (re, im) pairs.
pub fn matrix_from_rows(rows: usize, cols: usize, entries: &[(f64, f64)]) -> CMatrix {
    assert_eq!(entries.len(), rows * cols);
    CMatrix::from_fn(rows, cols, |i, j| {
        let (re, im) = entries[i * cols + j];
        C64::new(re, im)
    })
}

/// The 2x2 Pauli matrices, indexed 0..=3 as I, x, y, z.
pub fn pauli(index: usize) -> CMatrix {
    let z = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    match index {
        0 => CMatrix::from_row_slice(2, 2, &[one, z, z, one]),
        1 => CMatrix::from_row_slice(2, 2, &[z, one, one, z]),
        2 => CMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        3 => CMatrix::from_row_slice(2, 2, &[one, z, z, -one]),
        _ => panic!("pauli index must be 0..=3"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_hermitian, random_psd};
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn frob(m: &CMatrix) -> f64 {
        m.norm()
    }

    #[test]
    fn identity_eigenvalues() {
        let op = HermitianOperator::new(identity(2)).unwrap();
        let eig = hermitian_eig(&op);
        assert_relative_eq!(eig.eigenvalues[0], 1.0, epsilon = 1e-14);
        assert_relative_eq!(eig.eigenvalues[1], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn pauli_z_eigenvalues() {
        let op = HermitianOperator::new(pauli(3)).unwrap();
        let eig = hermitian_eig(&op);
        assert_relative_eq!(eig.eigenvalues[0], -1.0, epsilon = 1e-14);
        assert_relative_eq!(eig.eigenvalues[1], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn two_site_xxz_spectrum() {
        // -(x(x)x + y(x)y + 0.5 z(x)z) on two qubits.
        let mut h = CMatrix::zeros(4, 4);
        h -= kron(&pauli(1), &pauli(1));
        h -= kron(&pauli(2), &pauli(2));
        h -= kron(&pauli(3), &pauli(3)).scale(0.5);
        let eig = hermitian_eig(&HermitianOperator::new(h).unwrap());
        let expect = [-1.5, -0.5, -0.5, 2.5];
        for (got, want) in eig.eigenvalues.iter().zip(expect) {
            assert_relative_eq!(*got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = identity(2);
        m[(0, 1)] = C64::new(1.0, 0.0);
        assert!(matches!(
            HermitianOperator::new(m),
            Err(Error::NonHermitian { .. })
        ));
    }

    #[test]
    fn sqrt_of_scalar_matrix() {
        let op = HermitianOperator::new(identity(2).scale(0.25)).unwrap();
        let root = matrix_function(&op, ScalarFn::Sqrt).unwrap();
        assert!(frob(&(root.matrix() - identity(2).scale(0.5))) < 1e-14);
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let op = HermitianOperator::new(CMatrix::zeros(3, 3)).unwrap();
        let e = matrix_function(&op, ScalarFn::Exp).unwrap();
        assert!(frob(&(e.matrix() - identity(3))) < 1e-14);
    }

    #[test]
    fn sqrt_of_projector_is_projector() {
        // Bell projector is idempotent, hence its own square root.
        let bell = crate::bipartite::max_entangled(2).unwrap();
        let op = HermitianOperator::new(bell.matrix().clone()).unwrap();
        let root = matrix_function(&op, ScalarFn::Sqrt).unwrap();
        assert!(frob(&(root.matrix() - bell.matrix())) < 1e-10);
    }

    #[test]
    fn sqrt_rejects_negative_spectrum() {
        let op = HermitianOperator::new(-identity(2)).unwrap();
        assert!(matches!(
            matrix_function(&op, ScalarFn::Sqrt),
            Err(Error::NegativeSpectrum { .. })
        ));
    }

    #[test]
    fn kron_identities() {
        assert!(frob(&(kron(&identity(2), &identity(2)) - identity(4))) == 0.0);
        let zz = kron(&pauli(3), &pauli(3));
        let expect = CMatrix::from_diagonal(&CVector::from_vec(vec![
            C64::new(1.0, 0.0),
            C64::new(-1.0, 0.0),
            C64::new(-1.0, 0.0),
            C64::new(1.0, 0.0),
        ]));
        assert!(frob(&(zz - expect)) < 1e-15);
    }

    #[test]
    fn kron_bit_flip_on_first_factor() {
        let mut v = CVector::zeros(4);
        v[0] = C64::new(1.0, 0.0); // |0> (x) |0>
        let flipped = kron(&pauli(1), &identity(2)) * v;
        assert_relative_eq!(flipped[2].re, 1.0, epsilon = 1e-15); // |1> (x) |0>
    }

    #[test]
    fn trace_norms() {
        assert_relative_eq!(trace_norm(&identity(2)), 2.0, epsilon = 1e-12);
        assert_relative_eq!(trace_norm(&pauli(3)), 2.0, epsilon = 1e-12);
        let bell = crate::bipartite::max_entangled(2).unwrap();
        let diff = bell.matrix() - identity(4).scale(0.25);
        // Spectrum {3/4, -1/4, -1/4, -1/4}.
        assert_relative_eq!(trace_norm(&diff), 1.5, epsilon = 1e-10);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn eig_reconstructs(seed in 0u64..1000, dim in 2usize..=16) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let h = random_hermitian(&mut rng, dim);
            let op = HermitianOperator::new(h.clone()).unwrap();
            let rec = hermitian_eig(&op).reconstruct();
            prop_assert!(frob(&(rec - &h)) <= 1e-8 * frob(&h).max(1.0));
        }

        #[test]
        fn eigenvectors_orthonormal(seed in 0u64..1000, dim in 2usize..=16) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let op = HermitianOperator::new(random_hermitian(&mut rng, dim)).unwrap();
            let v = hermitian_eig(&op).eigenvectors;
            let gram = v.adjoint() * &v;
            prop_assert!(frob(&(gram - identity(dim))) <= 1e-10 * dim as f64);
        }

        #[test]
        fn sqrt_squares_back(seed in 0u64..1000, dim in 2usize..=8) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = random_psd(&mut rng, dim);
            let op = HermitianOperator::new(p.clone()).unwrap();
            let root = matrix_function(&op, ScalarFn::Sqrt).unwrap();
            let sq = root.matrix() * root.matrix();
            prop_assert!(frob(&(sq - &p)) <= 1e-8 * frob(&p).max(1.0));
        }

        #[test]
        fn kron_is_associative(seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_hermitian(&mut rng, 2);
            let b = random_hermitian(&mut rng, 2);
            let c = random_hermitian(&mut rng, 2);
            let left = kron(&kron(&a, &b), &c);
            let right = kron(&a, &kron(&b, &c));
            prop_assert!(frob(&(left - right)) <= 1e-12 * frob(&kron(&a, &kron(&b, &c))).max(1.0));
        }

        #[test]
        fn kron_mixed_product(seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_hermitian(&mut rng, 2);
            let b = random_hermitian(&mut rng, 2);
            let c = random_hermitian(&mut rng, 2);
            let d = random_hermitian(&mut rng, 2);
            let lhs = kron(&a, &b) * kron(&c, &d);
            let rhs = kron(&(&a * &c), &(&b * &d));
            prop_assert!(frob(&(lhs - &rhs)) <= 1e-12 * frob(&rhs).max(1.0));
        }

        #[test]
        fn trace_norm_is_a_norm(seed in 0u64..1000, dim in 2usize..=6, scale in -3.0f64..3.0) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_hermitian(&mut rng, dim);
            let b = random_hermitian(&mut rng, dim);
            let tri = trace_norm(&(&a + &b));
            prop_assert!(tri <= trace_norm(&a) + trace_norm(&b) + 1e-9);
            let hom = trace_norm(&a.scale(scale));
            prop_assert!((hom - scale.abs() * trace_norm(&a)).abs() <= 1e-9 * (1.0 + hom));
        }
    }
}
