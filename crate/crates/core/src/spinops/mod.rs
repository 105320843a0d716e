// Copyright 2026 The nmrlogic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Small dense complex linear algebra and multi-spin operators.

mod expm;
mod fidelity;
mod matrix;
mod operators;

use thiserror::Error;

pub use expm::{expm_hermitian, expm_hermitian_with, jacobi_eigen, HermitianEigen};
pub use fidelity::{phase_fidelity, phase_fidelity_with};
pub use matrix::{sig6, ComplexMatrix, MatrixDocument, C_I, C_ONE, C_ZERO};
pub use operators::{cnot, embed, kron, pauli, projector, spin_operator, swap, zz_operator, Axis, SpinIndex};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpinOpsError {
    #[error("matrix is not square ({rows} rows, row of length {cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("spin index {index} out of range for {nspins} spins")]
    IndexOutOfRange { index: usize, nspins: usize },
    #[error("matrix is not Hermitian (deviation {deviation:e})")]
    NonHermitian { deviation: f64 },
    #[error("matrix is not unitary (deviation {deviation:e})")]
    NonUnitary { deviation: f64 },
    #[error("unknown axis `{0}`")]
    UnknownAxis(String),
}

/// Absolute tolerances shared by every numerical check in the crate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Hermiticity and construction checks.
    pub construction: f64,
    /// Unitarity and entrywise gate equality.
    pub equivalence: f64,
    /// Slack on phase fidelity when deciding gate equivalence.
    pub fidelity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            construction: 1e-12,
            equivalence: 1e-10,
            fidelity: 1e-9,
        }
    }
}
