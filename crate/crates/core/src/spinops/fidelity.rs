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

//! Gate comparison modulo a global phase.

use super::matrix::ComplexMatrix;
use super::{SpinOpsError, Tolerances};

/// `|tr(u† v)| / dim`, which is 1 exactly when `u = e^{iφ} v`.
pub fn phase_fidelity(u: &ComplexMatrix, v: &ComplexMatrix) -> Result<f64, SpinOpsError> {
    phase_fidelity_with(u, v, &Tolerances::default())
}

pub fn phase_fidelity_with(
    u: &ComplexMatrix,
    v: &ComplexMatrix,
    tol: &Tolerances,
) -> Result<f64, SpinOpsError> {
    if u.dim() != v.dim() {
        return Err(SpinOpsError::DimensionMismatch {
            left: u.dim(),
            right: v.dim(),
        });
    }
    for m in [u, v] {
        let deviation = m.unitarity_deviation();
        if deviation > tol.equivalence {
            return Err(SpinOpsError::NonUnitary { deviation });
        }
    }
    let overlap = (&u.dagger() * v).trace().norm() / u.dim() as f64;
    Ok(overlap.min(1.0))
}
