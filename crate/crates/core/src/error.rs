// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use crate::numerics::Basis;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("basis mismatch: {left} vs {right}")]
    BasisMismatch { left: Basis, right: Basis },

    #[error("basis {basis} has dimension {expected}, got {got}")]
    Dimension {
        basis: Basis,
        expected: usize,
        got: usize,
    },

    #[error("tensor products are only defined on generic bases, got {0}")]
    NonGenericTensor(Basis),

    #[error("operator is not Hermitian (max |A - A^dagger| = {0:e})")]
    NotHermitian(f64),

    #[error("expectation value has imaginary residue {0:e}")]
    ImaginaryResidue(f64),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: String, reason: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("integration aborted at t = {t:.6} T: {reason}")]
    IntegratorAbort { t: f64, reason: String },

    #[error("trajectory has no samples")]
    EmptyTrajectory,

    #[error("{}:{line}: {message}", path.display())]
    Config {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn param(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name: name.into(),
            reason: reason.into(),
        }
    }
}
