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

//! Rotation sign and tensor-ordering convention.
//!
//! Single-spin rotations are `exp(s·i·θ·I_axis)`. The sign `s` for x/y
//! pulses, the sign for z rotations, and whether the control spin is the
//! leftmost tensor factor are fixed once by [`search`], which tries all eight
//! combinations against the √(−i)·CNOT target of the five-pulse construction.
//! The unique survivor is frozen in [`FROZEN`].

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::propagators::{coupling_propagator, rotation_propagator_with};
use super::{DynamicsError, SpinSystem};
use crate::spinops::{cnot, Axis, ComplexMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Convention {
    /// Sign in the exponent of x and y pulses.
    pub pulse_sign: Sign,
    /// Sign in the exponent of single-spin z rotations.
    pub z_sign: Sign,
    /// Control spin is the leftmost tensor factor.
    pub control_first: bool,
}

impl Convention {
    pub fn sign_for(&self, axis: Axis) -> f64 {
        match axis {
            Axis::Z => self.z_sign.value(),
            Axis::X | Axis::Y => self.pulse_sign.value(),
        }
    }

    pub fn all() -> Vec<Convention> {
        let mut out = Vec::with_capacity(8);
        for pulse_sign in [Sign::Plus, Sign::Minus] {
            for z_sign in [Sign::Plus, Sign::Minus] {
                for control_first in [true, false] {
                    out.push(Convention {
                        pulse_sign,
                        z_sign,
                        control_first,
                    });
                }
            }
        }
        out
    }
}

/// Convention used by every propagator in the crate.
pub const FROZEN: Convention = Convention {
    pulse_sign: Sign::Plus,
    z_sign: Sign::Plus,
    control_first: true,
};

/// Outcome of testing one convention.
#[derive(Clone, Debug)]
pub struct ConventionTrial {
    pub convention: Convention,
    pub unitary: ComplexMatrix,
    /// Largest entrywise deviation from √(−i)·CNOT.
    pub max_deviation: f64,
}

/// √(−i)·CNOT, the target of the five-pulse construction.
pub fn sqrt_minus_i_cnot() -> ComplexMatrix {
    let sqrt_minus_i = C64::new(0.0, -1.0).sqrt();
    cnot().scale(sqrt_minus_i)
}

/// Build the five-operator CNOT product under a trial convention.
///
/// `target` and `control` are spin labels in `sys`; the system is reordered
/// according to `conv.control_first`. Applied in time order: R_y(π/2) on the
/// target, the coupling evolution at θ = π/2, R_z(−π/2) on the target,
/// R_z(−π/2) on the control, R_y(−π/2) on the target.
pub fn five_pulse_cnot(
    sys: &SpinSystem,
    control: &str,
    target: &str,
    conv: &Convention,
) -> Result<ComplexMatrix, DynamicsError> {
    let order = if conv.control_first {
        [control, target]
    } else {
        [target, control]
    };
    let sys = sys.reordered(&order)?;
    let steps = [
        rotation_propagator_with(&sys, target, Axis::Y, FRAC_PI_2, conv)?,
        coupling_propagator(&sys, (control, target), FRAC_PI_2)?,
        rotation_propagator_with(&sys, target, Axis::Z, -FRAC_PI_2, conv)?,
        rotation_propagator_with(&sys, control, Axis::Z, -FRAC_PI_2, conv)?,
        rotation_propagator_with(&sys, target, Axis::Y, -FRAC_PI_2, conv)?,
    ];
    Ok(steps
        .iter()
        .fold(ComplexMatrix::identity(sys.dim()), |acc, u| u * &acc))
}

/// Try every convention; returns one trial per combination.
pub fn search(sys: &SpinSystem, control: &str, target: &str) -> Result<Vec<ConventionTrial>, DynamicsError> {
    let want = sqrt_minus_i_cnot();
    Convention::all()
        .into_iter()
        .map(|convention| {
            let unitary = five_pulse_cnot(sys, control, target, &convention)?;
            let max_deviation = unitary.max_abs_diff(&want);
            Ok(ConventionTrial {
                convention,
                unitary,
                max_deviation,
            })
        })
        .collect()
}

/// Conventions whose five-pulse product matches √(−i)·CNOT within `tol`.
pub fn matching(
    sys: &SpinSystem,
    control: &str,
    target: &str,
    tol: f64,
) -> Result<Vec<Convention>, DynamicsError> {
    Ok(search(sys, control, target)?
        .into_iter()
        .filter(|t| t.max_deviation <= tol)
        .map(|t| t.convention)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eight_distinct_combinations() {
        let all = Convention::all();
        assert_eq!(all.len(), 8);
        let set: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(set.len(), 8);
    }

    #[test]
    fn frozen_is_the_unique_match() {
        let sys = SpinSystem::xe_h_default();
        let hits = matching(&sys, "B", "A", 1e-10).unwrap();
        assert_eq!(hits, vec![FROZEN]);
    }

    #[test]
    fn sign_serialization() {
        let json = serde_json::to_string(&FROZEN).unwrap();
        assert_eq!(json, r#"{"pulse_sign":"+1","z_sign":"+1","control_first":true}"#);
    }
}
