// Copyright 2026 qcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: defect {defect:.3e} exceeds tolerance {tol:.3e}")]
    NonHermitian { defect: f64, tol: f64 },

    #[error("negative spectrum: eigenvalue {eigenvalue:.3e} below -{floor:.3e}")]
    NegativeSpectrum { eigenvalue: f64, floor: f64 },

    #[error("operator is not positive semidefinite: min eigenvalue {min_eigenvalue:.3e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("trace {trace:.12} differs from 1 beyond tolerance")]
    TraceNotOne { trace: f64 },

    #[error("state carries no bipartite dimension tag")]
    MissingDims,

    #[error("invalid bipartite dimensions: {0}")]
    BadDims(String),

    #[error("list lengths do not match: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("weights do not form a probability vector: {0}")]
    BadWeights(String),

    #[error("basis is not orthonormal: defect {0:.3e}")]
    BadBasis(f64),

    #[error("matrix is not a valid isometry for this state: {0}")]
    NotIsometry(String),

    #[error("marginal variance {0:.3e} is below the variance floor")]
    DegenerateVariance(f64),

    #[error("invalid swap pair: {0}")]
    BadPair(String),

    #[error("euler step size {h} must be smaller than 1")]
    StepTooLarge { h: f64 },

    #[error("chain dimension 2^{sites} exceeds the cap 2^{cap}")]
    DimensionCap { sites: usize, cap: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    ///
    /// 2 = invalid parameters or malformed input, 3 = i/o failure,
    /// 4 = dimension mismatch.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 3,
            Error::DimensionMismatch(_) | Error::MissingDims => 4,
            _ => 2,
        }
    }
}
