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

//! Rotating-frame Hamiltonian and the propagators built from it.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::convention::{Convention, FROZEN};
use super::{DynamicsError, SpinSystem};
use crate::spinops::{expm_hermitian, spin_operator, zz_operator, Axis, ComplexMatrix};

/// An rf pulse on one spin.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PulseSpec {
    pub target: String,
    pub axis: Axis,
    /// Rotation angle, radians.
    pub angle: f64,
    /// rf amplitude ω₁, rad/s. Carried for the Hamiltonian; hard pulses ignore it.
    pub omega1: f64,
}

/// `Σ Ω_k I_z^k + Σ 2πJ_kl I_z^k I_z^l + Σ ω₁ I_axis^target`.
pub fn hamiltonian(sys: &SpinSystem, active_pulses: &[PulseSpec]) -> Result<ComplexMatrix, DynamicsError> {
    let mut h = free_hamiltonian(sys, false)?;
    for p in active_pulses {
        let op = spin_operator(p.axis, sys.spin_index(&p.target)?);
        h = &h + &op.scale(C64::new(p.omega1, 0.0));
    }
    Ok(h)
}

/// Pulse-free Hamiltonian; `refocus_offsets` drops the Zeeman terms.
pub fn free_hamiltonian(sys: &SpinSystem, refocus_offsets: bool) -> Result<ComplexMatrix, DynamicsError> {
    let mut h = ComplexMatrix::zeros(sys.dim());
    if !refocus_offsets {
        for (k, spin) in sys.spins().iter().enumerate() {
            if spin.offset != 0.0 {
                let iz = spin_operator(Axis::Z, crate::spinops::SpinIndex::new(k, sys.nspins())?);
                h = &h + &iz.scale(C64::new(spin.offset, 0.0));
            }
        }
    }
    for c in sys.couplings() {
        let zz = zz_operator(sys.spin_index(&c.a)?, sys.spin_index(&c.b)?);
        h = &h + &zz.scale(C64::new(2.0 * PI * c.j_hz, 0.0));
    }
    Ok(h)
}

/// Ideal hard pulse `exp(s·i·angle·I_axis)` on one spin, under the frozen convention.
pub fn rotation_propagator(
    sys: &SpinSystem,
    target: &str,
    axis: Axis,
    angle: f64,
) -> Result<ComplexMatrix, DynamicsError> {
    rotation_propagator_with(sys, target, axis, angle, &FROZEN)
}

pub fn rotation_propagator_with(
    sys: &SpinSystem,
    target: &str,
    axis: Axis,
    angle: f64,
    conv: &Convention,
) -> Result<ComplexMatrix, DynamicsError> {
    if !angle.is_finite() {
        return Err(DynamicsError::InvalidAngle(angle));
    }
    let op = spin_operator(axis, sys.spin_index(target)?);
    Ok(expm_hermitian(&op, C64::new(0.0, conv.sign_for(axis) * angle))?)
}

/// `exp(i·2θ·I_z S_z) = cos(θ/2)·1 + i·sin(θ/2)·diag(1,−1,−1,1)` on the pair,
/// with θ = πJτ.
pub fn coupling_propagator(
    sys: &SpinSystem,
    pair: (&str, &str),
    theta: f64,
) -> Result<ComplexMatrix, DynamicsError> {
    if sys.coupling_hz(pair.0, pair.1).is_none() {
        // Still report an unknown label before an undeclared pair.
        sys.index_of(pair.0)?;
        sys.index_of(pair.1)?;
        return Err(DynamicsError::UnknownPair(pair.0.to_string(), pair.1.to_string()));
    }
    let zz = zz_operator(sys.spin_index(pair.0)?, sys.spin_index(pair.1)?);
    Ok(expm_hermitian(&zz, C64::new(0.0, 2.0 * theta))?)
}

/// Free precession `exp(i·H₀·t)` for `duration` seconds.
pub fn delay_propagator(
    sys: &SpinSystem,
    duration: f64,
    refocus_offsets: bool,
) -> Result<ComplexMatrix, DynamicsError> {
    if !(duration >= 0.0) || !duration.is_finite() {
        return Err(DynamicsError::NegativeDuration(duration));
    }
    let h = free_hamiltonian(sys, refocus_offsets)?;
    Ok(expm_hermitian(
        &h,
        C64::new(0.0, FROZEN.z_sign.value() * duration),
    )?)
}
