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

//! Gate equivalence checks.

use std::collections::VecDeque;

use num_complex::Complex64 as C64;

use super::SeqError;
use crate::spinops::{phase_fidelity_with, ComplexMatrix, SpinOpsError, Tolerances};

/// True iff `u = e^{iφ}·v` within the fidelity tolerance.
pub fn equivalent_global_phase<U, V>(u: &U, v: &V) -> Result<bool, SeqError>
where
    U: AsRef<ComplexMatrix> + ?Sized,
    V: AsRef<ComplexMatrix> + ?Sized,
{
    equivalent_global_phase_with(u.as_ref(), v.as_ref(), &Tolerances::default())
}

pub fn equivalent_global_phase_with(
    u: &ComplexMatrix,
    v: &ComplexMatrix,
    tol: &Tolerances,
) -> Result<bool, SeqError> {
    let f = phase_fidelity_with(u, v, tol)?;
    Ok(f >= 1.0 - tol.fidelity)
}

/// Diagonal unitaries `left`, `right` with `left·u·right = v`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalPhases {
    pub left: Vec<C64>,
    pub right: Vec<C64>,
}

/// True iff some diagonal unitaries satisfy `D₁·u·D₂ = v` within `1e-9`.
pub fn equivalent_up_to_diagonal_phases<U, V>(u: &U, v: &V) -> Result<bool, SeqError>
where
    U: AsRef<ComplexMatrix> + ?Sized,
    V: AsRef<ComplexMatrix> + ?Sized,
{
    Ok(diagonal_phases(u.as_ref(), v.as_ref(), Tolerances::default().fidelity)?.is_some())
}

/// Solve for the diagonal phases, if they exist.
///
/// Entry moduli must agree first. The phases then satisfy
/// `α_i + β_j = arg v_ij − arg u_ij` on every nonzero entry; these are
/// propagated over the bipartite row/column graph of nonzero entries and the
/// result is checked against every entry.
pub fn diagonal_phases(
    u: &ComplexMatrix,
    v: &ComplexMatrix,
    tol: f64,
) -> Result<Option<DiagonalPhases>, SeqError> {
    let n = u.dim();
    if n != v.dim() {
        return Err(SpinOpsError::DimensionMismatch {
            left: n,
            right: v.dim(),
        }
        .into());
    }
    for i in 0..n {
        for j in 0..n {
            if (u[(i, j)].norm() - v[(i, j)].norm()).abs() > tol {
                return Ok(None);
            }
        }
    }
    // Entries below this are structural zeros.
    let nonzero = |z: C64| z.norm() > tol.sqrt();
    let mut left: Vec<Option<C64>> = vec![None; n];
    let mut right: Vec<Option<C64>> = vec![None; n];
    // Nodes 0..n are rows, n..2n columns.
    for start in 0..n {
        if left[start].is_some() {
            continue;
        }
        left[start] = Some(C64::new(1.0, 0.0));
        let mut queue = VecDeque::from([start]);
        while let Some(node) = queue.pop_front() {
            if node < n {
                let i = node;
                let a = left[i].expect("visited");
                for j in 0..n {
                    if right[j].is_none() && nonzero(u[(i, j)]) {
                        // a·u·b = v  ⇒  b = v / (a·u), unit modulus.
                        let b = v[(i, j)] / (a * u[(i, j)]);
                        right[j] = Some(b / b.norm());
                        queue.push_back(n + j);
                    }
                }
            } else {
                let j = node - n;
                let b = right[j].expect("visited");
                for i in 0..n {
                    if left[i].is_none() && nonzero(u[(i, j)]) {
                        let a = v[(i, j)] / (u[(i, j)] * b);
                        left[i] = Some(a / a.norm());
                        queue.push_back(i);
                    }
                }
            }
        }
    }
    let one = C64::new(1.0, 0.0);
    let left: Vec<C64> = left.into_iter().map(|x| x.unwrap_or(one)).collect();
    let right: Vec<C64> = right.into_iter().map(|x| x.unwrap_or(one)).collect();
    for i in 0..n {
        for j in 0..n {
            if (left[i] * u[(i, j)] * right[j] - v[(i, j)]).norm() > tol {
                return Ok(None);
            }
        }
    }
    Ok(Some(DiagonalPhases { left, right }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spinops::cnot;

    #[test]
    fn identity_is_not_diagonally_cnot() {
        let i = ComplexMatrix::identity(4);
        assert!(!equivalent_up_to_diagonal_phases(&i, &cnot()).unwrap());
        assert!(equivalent_up_to_diagonal_phases(&i, &i).unwrap());
    }

    #[test]
    fn recovers_planted_phases() {
        let d1: Vec<C64> = [0.3, -1.2, 2.0, 0.7]
            .iter()
            .map(|&t| C64::from_polar(1.0, t))
            .collect();
        let d2: Vec<C64> = [1.1, 0.0, -0.4, 2.9]
            .iter()
            .map(|&t| C64::from_polar(1.0, t))
            .collect();
        let v = &(&ComplexMatrix::from_diag(&d1) * &cnot()) * &ComplexMatrix::from_diag(&d2);
        let found = diagonal_phases(&cnot(), &v, 1e-9).unwrap().expect("solvable");
        let rebuilt =
            &(&ComplexMatrix::from_diag(&found.left) * &cnot()) * &ComplexMatrix::from_diag(&found.right);
        assert!(rebuilt.approx_eq(&v, 1e-12));
        assert!(!equivalent_global_phase(&cnot(), &v).unwrap());
    }

    #[test]
    fn inconsistent_phases_rejected() {
        // Same moduli as a Hadamard pair but with a phase no diagonal pair can produce.
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let h = ComplexMatrix::from_real_rows(&[&[s, s], &[s, -s]]).unwrap();
        let k = ComplexMatrix::from_real_rows(&[&[s, s], &[s, s]]).unwrap();
        assert!(diagonal_phases(&h, &k, 1e-9).unwrap().is_none());
    }

    #[test]
    fn dimension_mismatch() {
        let r = equivalent_global_phase(&ComplexMatrix::identity(2), &ComplexMatrix::identity(4));
        assert!(r.is_err());
        let r = equivalent_up_to_diagonal_phases(&ComplexMatrix::identity(2), &ComplexMatrix::identity(4));
        assert!(r.is_err());
    }
}
