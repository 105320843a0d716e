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

//! Cross-polarization between hyperpolarized ¹²⁹Xe and ¹H, and the
//! sign-selected controlled rotation built on it.

use std::f64::consts::PI;

use super::OpnmrError;
use crate::dynamics::{evolve, rotation_propagator, DensityState, SpinSystem};
use crate::spinops::{projector, Axis, ComplexMatrix};

/// Convex mixing of the target polarization toward the source:
/// `η·source + (1 − η)·target`.
pub fn cross_polarize(source_pol: f64, target_pol: f64, efficiency: f64) -> Result<f64, OpnmrError> {
    if !(0.0..=1.0).contains(&efficiency) {
        return Err(OpnmrError::Efficiency(efficiency));
    }
    Ok(efficiency * source_pol + (1.0 - efficiency) * target_pol)
}

/// What the cross-polarization stage does for a given pair of signs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateAction {
    /// Xe polarization negative: nothing to do.
    NoOp,
    /// Both positive.
    SequenceA,
    /// Xe positive, H negative.
    SequenceB,
}

/// Pick the action from the signs of the Xe and H polarizations.
pub fn cp_gate(xe_sign: f64, h_sign: f64) -> GateAction {
    if xe_sign < 0.0 {
        GateAction::NoOp
    } else if h_sign >= 0.0 {
        GateAction::SequenceA
    } else {
        GateAction::SequenceB
    }
}

impl GateAction {
    /// Effective rotation sense of the controlled π rotation; zero for no-op.
    pub fn rotation_sense(self) -> f64 {
        match self {
            GateAction::NoOp => 0.0,
            GateAction::SequenceA => 1.0,
            GateAction::SequenceB => -1.0,
        }
    }

    /// Controlled π rotation about x on `target`, active when `control` is
    /// down: `|0⟩⟨0| ⊗ 1 + |1⟩⟨1| ⊗ R_x(±π)`.
    pub fn unitary(self, sys: &SpinSystem, control: &str, target: &str) -> Result<ComplexMatrix, OpnmrError> {
        if self == GateAction::NoOp {
            return Ok(ComplexMatrix::identity(sys.dim()));
        }
        let c = sys.spin_index(control)?;
        let rot = rotation_propagator(sys, target, Axis::X, self.rotation_sense() * PI)?;
        let up = projector(false, c);
        let down = projector(true, c);
        Ok(&up + &(&down * &rot))
    }

    pub fn apply(
        self,
        state: &DensityState,
        sys: &SpinSystem,
        control: &str,
        target: &str,
    ) -> Result<DensityState, OpnmrError> {
        Ok(evolve(state, &self.unitary(sys, control, target)?)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqlang::equivalent_up_to_diagonal_phases;
    use crate::spinops::cnot;

    #[test]
    fn sign_follows_xenon() {
        assert_eq!(cross_polarize(-0.2, 0.05, 1.0).unwrap(), -0.2);
        assert_eq!(cross_polarize(-0.2, 0.05, 0.0).unwrap(), 0.05);
        let eps = 3.4e-6;
        assert_eq!(cross_polarize(1e5 * eps, eps, 1.0).unwrap(), 1e5 * eps);
        assert!(matches!(
            cross_polarize(1.0, 0.0, 1.5),
            Err(OpnmrError::Efficiency(_))
        ));
        assert!(matches!(
            cross_polarize(1.0, 0.0, -0.1),
            Err(OpnmrError::Efficiency(_))
        ));
    }

    #[test]
    fn selection_table() {
        assert_eq!(cp_gate(-1.0, 1.0), GateAction::NoOp);
        assert_eq!(cp_gate(-1.0, -1.0), GateAction::NoOp);
        assert_eq!(cp_gate(1.0, 1.0), GateAction::SequenceA);
        assert_eq!(cp_gate(1.0, -1.0), GateAction::SequenceB);
    }

    #[test]
    fn sequences_are_cnot_up_to_phases() {
        let sys = SpinSystem::xe_h_default();
        for action in [GateAction::SequenceA, GateAction::SequenceB] {
            let u = action.unitary(&sys, "B", "A").unwrap();
            assert!(u.is_unitary(1e-12));
            assert!(equivalent_up_to_diagonal_phases(&u, &cnot()).unwrap());
        }
        let a = GateAction::SequenceA.unitary(&sys, "B", "A").unwrap();
        let b = GateAction::SequenceB.unitary(&sys, "B", "A").unwrap();
        assert!(!a.approx_eq(&b, 1e-6));
    }

    #[test]
    fn noop_leaves_state() {
        let sys = SpinSystem::xe_h_default();
        let s = DensityState::from_polarizations(&[-0.3, 0.2], &[0.0, 0.0]).unwrap();
        let out = GateAction::NoOp.apply(&s, &sys, "B", "A").unwrap();
        assert_eq!(out.rho(), s.rho());
    }
}
