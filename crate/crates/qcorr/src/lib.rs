// Copyright 2026 qcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Quantum correlation and entanglement measures for finite-dimensional
//! bipartite systems, plus a jump-type dynamical semigroup simulator for
//! the XXZ spin chain.
//!
//! The library is organized around dense complex linear algebra
//! ([`numerics`]), bipartite state constructions and pure-state ensembles
//! ([`bipartite`]), correlation coefficients and the separable-shadow
//! distance ([`correlations`]), entanglement of formation and PPT
//! classification ([`entanglement`]), and the XXZ chain dynamics with
//! entanglement-production tracking ([`xxz`]).
//!
//! All randomized procedures take an explicit seed and are reproducible.

pub mod bipartite;
pub mod correlations;
pub mod entanglement;
pub mod error;
pub mod io;
pub mod numerics;
pub mod optimizer;
pub mod random;
pub mod tolerance;
pub mod xxz;

pub use bipartite::{BipartiteDims, DensityMatrix, PureEnsemble, StateDims};
pub use error::{Error, Result};
pub use numerics::{CMatrix, CVector, HermitianOperator, SpectralDecomposition, C64};
pub use optimizer::EnsembleOptions;
