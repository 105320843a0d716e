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

//! Hermitian eigendecomposition and matrix exponentials built on it.

use num_complex::Complex64 as C64;

use super::matrix::{ComplexMatrix, C_ZERO};
use super::{SpinOpsError, Tolerances};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues (ascending order not guaranteed) and the unitary whose columns
/// are the matching eigenvectors.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic complex Jacobi diagonalisation.
///
/// Each step removes the phase of `a[p][q]` with a diagonal unitary and then
/// zeroes the resulting real 2×2 block with a plane rotation. The input must
/// already be Hermitian.
pub fn jacobi_eigen(h: &ComplexMatrix) -> HermitianEigen {
    let n = h.dim();
    let mut a = h.clone();
    // Symmetrise so accumulated rounding cannot push it off the Hermitian manifold.
    for i in 0..n {
        a[(i, i)] = C64::new(a[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let avg = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let scale = a.max_abs().max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= 1e-17 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= 1e-300 {
                    continue;
                }
                let phase = apq / r;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * r);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // G = diag-phase · rotation, acting on columns p and q.
                // Column p: (c, -s·conj(phase)) ; column q: (s·phase, c)
                let g_pp = C64::new(c, 0.0);
                let g_pq = phase * s;
                let g_qp = -phase.conj() * s;
                let g_qq = C64::new(c, 0.0);

                // A <- A G
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * g_pp + akq * g_qp;
                    a[(k, q)] = akp * g_pq + akq * g_qq;
                }
                // A <- G† A
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
                    a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
                }
                a[(p, q)] = C_ZERO;
                a[(q, p)] = C_ZERO;
                // V <- V G
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * g_pp + vkq * g_qp;
                    v[(k, q)] = vkp * g_pq + vkq * g_qq;
                }
            }
        }
    }
    HermitianEigen {
        values: (0..n).map(|i| a[(i, i)].re).collect(),
        vectors: v,
    }
}

/// `exp(scale · h)` for Hermitian `h`, through its eigendecomposition.
///
/// The result is unitary whenever `scale` is purely imaginary.
pub fn expm_hermitian(h: &ComplexMatrix, scale: C64) -> Result<ComplexMatrix, SpinOpsError> {
    expm_hermitian_with(h, scale, &Tolerances::default())
}

pub fn expm_hermitian_with(
    h: &ComplexMatrix,
    scale: C64,
    tol: &Tolerances,
) -> Result<ComplexMatrix, SpinOpsError> {
    let deviation = h.hermitian_deviation();
    if deviation > tol.construction {
        return Err(SpinOpsError::NonHermitian { deviation });
    }
    let n = h.dim();
    // Diagonal input needs no rotation; this keeps diagonal propagators exact.
    if off_diagonal_norm(h) == 0.0 {
        let diag: Vec<C64> = (0..n).map(|i| (scale * h[(i, i)].re).exp()).collect();
        return Ok(ComplexMatrix::from_diag(&diag));
    }
    let eig = jacobi_eigen(h);
    let v = &eig.vectors;
    let mut out = ComplexMatrix::zeros(n);
    for (k, &lambda) in eig.values.iter().enumerate() {
        let e = (scale * lambda).exp();
        for i in 0..n {
            let vik = v[(i, k)] * e;
            for j in 0..n {
                out[(i, j)] += vik * v[(j, k)].conj();
            }
        }
    }
    Ok(out)
}
