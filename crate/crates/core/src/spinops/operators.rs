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

//! Tensor products and spin-1/2 angular momentum operators.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::matrix::{ComplexMatrix, C_I, C_ONE, C_ZERO};
use super::SpinOpsError;

/// Rotation or angular-momentum axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

impl FromStr for Axis {
    type Err = SpinOpsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "x" | "X" => Ok(Axis::X),
            "y" | "Y" => Ok(Axis::Y),
            "z" | "Z" => Ok(Axis::Z),
            other => Err(SpinOpsError::UnknownAxis(other.to_string())),
        }
    }
}

/// Position of one spin in the tensor-product ordering.
///
/// Index 0 is the most significant (leftmost) Kronecker factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpinIndex {
    index: usize,
    nspins: usize,
}

impl SpinIndex {
    pub fn new(index: usize, nspins: usize) -> Result<Self, SpinOpsError> {
        if index >= nspins {
            return Err(SpinOpsError::IndexOutOfRange { index, nspins });
        }
        Ok(SpinIndex { index, nspins })
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn nspins(&self) -> usize {
        self.nspins
    }

    pub fn dim(&self) -> usize {
        1 << self.nspins
    }
}

/// Kronecker product with `a`'s indices major.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim(), b.dim());
    let mut out = ComplexMatrix::zeros(na * nb);
    for i in 0..na {
        for j in 0..na {
            let aij = a[(i, j)];
            if aij == C_ZERO {
                continue;
            }
            for k in 0..nb {
                for l in 0..nb {
                    out[(i * nb + k, j * nb + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Pauli matrix for an axis.
pub fn pauli(axis: Axis) -> ComplexMatrix {
    let rows = match axis {
        Axis::X => [[C_ZERO, C_ONE], [C_ONE, C_ZERO]],
        Axis::Y => [[C_ZERO, -C_I], [C_I, C_ZERO]],
        Axis::Z => [[C_ONE, C_ZERO], [C_ZERO, -C_ONE]],
    };
    ComplexMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).expect("2x2 literal")
}

/// Place a single-spin (2×2) operator at `which`, identities elsewhere.
pub fn embed(op: &ComplexMatrix, which: SpinIndex) -> ComplexMatrix {
    assert_eq!(op.dim(), 2, "embed expects a single-spin operator");
    let id = ComplexMatrix::identity(2);
    let mut acc: Option<ComplexMatrix> = None;
    for k in 0..which.nspins() {
        let factor = if k == which.index() { op } else { &id };
        acc = Some(match acc {
            None => factor.clone(),
            Some(m) => kron(&m, factor),
        });
    }
    acc.expect("nspins >= 1")
}

/// `σ_axis / 2` acting on spin `which`.
pub fn spin_operator(axis: Axis, which: SpinIndex) -> ComplexMatrix {
    embed(&pauli(axis).scale(C64::new(0.5, 0.0)), which)
}

/// Product `I_z^{(a)} I_z^{(b)}` for two distinct spins.
pub fn zz_operator(a: SpinIndex, b: SpinIndex) -> ComplexMatrix {
    &spin_operator(Axis::Z, a) * &spin_operator(Axis::Z, b)
}

/// Projector onto spin-up (`|0⟩`) or spin-down (`|1⟩`) of one spin.
pub fn projector(down: bool, which: SpinIndex) -> ComplexMatrix {
    let p = if down {
        ComplexMatrix::from_diag(&[C_ZERO, C_ONE])
    } else {
        ComplexMatrix::from_diag(&[C_ONE, C_ZERO])
    };
    embed(&p, which)
}

/// CNOT with the leftmost factor as control and the rightmost as target.
pub fn cnot() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
        &[0.0, 0.0, 1.0, 0.0],
    ])
    .expect("4x4 literal")
}

/// Two-qubit SWAP.
pub fn swap() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 0.0, 1.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
    ])
    .expect("4x4 literal")
}
