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

//! Sequence → unitary.

use num_complex::Complex64 as C64;

use super::ast::{EventKind, SequenceAst};
use super::SeqError;
use crate::dynamics::{coupling_propagator, delay_propagator, rotation_propagator, SpinSystem};
use crate::spinops::{Axis, ComplexMatrix, Tolerances};

#[derive(Clone, Debug, PartialEq)]
pub struct CompiledUnitary {
    pub matrix: ComplexMatrix,
    pub event_count: usize,
    /// Sum of delay durations; pulses take no time.
    pub total_duration: f64,
}

impl AsRef<ComplexMatrix> for CompiledUnitary {
    fn as_ref(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

/// Propagator of a single event.
pub fn event_propagator(kind: &EventKind, sys: &SpinSystem) -> Result<ComplexMatrix, SeqError> {
    let u = match kind {
        EventKind::Pulse { target, axis, .. } => {
            rotation_propagator(sys, target, *axis, kind.radians().expect("angle"))?
        }
        EventKind::ZComposite { target, .. } => {
            rotation_propagator(sys, target, Axis::Z, kind.radians().expect("angle"))?
        }
        EventKind::Delay { seconds, refocus } => delay_propagator(sys, *seconds, *refocus)?,
        EventKind::Couple { a, b, .. } => coupling_propagator(sys, (a, b), kind.radians().expect("angle"))?,
    };
    Ok(u)
}

/// `U = U_n ⋯ U_2 U_1`, where event 1 is the first one listed.
pub fn compile(ast: &SequenceAst, sys: &SpinSystem) -> Result<CompiledUnitary, SeqError> {
    let mut matrix = ComplexMatrix::identity(sys.dim());
    let mut total_duration = 0.0;
    for e in &ast.events {
        let u = event_propagator(&e.kind, sys).map_err(|err| err.located(e.span))?;
        matrix = &u * &matrix;
        if let EventKind::Delay { seconds, .. } = e.kind {
            total_duration += seconds;
        }
    }
    let deviation = matrix.unitarity_deviation();
    if deviation > Tolerances::default().equivalence {
        return Err(SeqError::NotUnitary(deviation));
    }
    Ok(CompiledUnitary {
        matrix,
        event_count: ast.len(),
        total_duration,
    })
}

impl CompiledUnitary {
    /// Phase-free view: the matrix scaled so its largest-modulus entry
    /// (first in row-major order) is real and positive.
    pub fn canonical_phase(&self) -> ComplexMatrix {
        let pivot = self
            .matrix
            .as_slice()
            .iter()
            .fold(C64::new(0.0, 0.0), |best, &z| {
                if z.norm() > best.norm() + 1e-12 {
                    z
                } else {
                    best
                }
            });
        if pivot.norm() == 0.0 {
            return self.matrix.clone();
        }
        self.matrix.scale(pivot.conj() / pivot.norm())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqlang::{fixtures, parse};

    #[test]
    fn empty_sequence_is_identity() {
        let sys = SpinSystem::xe_h_default();
        let c = compile(&SequenceAst::new("e", vec![]), &sys).unwrap();
        assert_eq!(c.matrix, ComplexMatrix::identity(4));
        assert_eq!(c.event_count, 0);
        assert_eq!(c.total_duration, 0.0);
    }

    #[test]
    fn five_pulse_cnot() {
        let prog = parse(fixtures::CNOT_V1).unwrap();
        let c = compile(&prog.sequences[0], &prog.system).unwrap();
        let want = crate::dynamics::convention::sqrt_minus_i_cnot();
        assert!(c.matrix.approx_eq(&want, 1e-10), "{}", c.matrix);
        assert_eq!(c.event_count, 5);
        assert!((c.total_duration - 0.005).abs() < 1e-15);
    }

    #[test]
    fn first_event_applied_first() {
        let sys = SpinSystem::xe_h_default();
        let x = EventKind::Pulse {
            target: "A".into(),
            axis: Axis::X,
            degrees: 90.0,
        };
        let y = EventKind::Pulse {
            target: "A".into(),
            axis: Axis::Y,
            degrees: 90.0,
        };
        let c = compile(&SequenceAst::new("s", vec![x.clone(), y.clone()]), &sys).unwrap();
        let ux = event_propagator(&x, &sys).unwrap();
        let uy = event_propagator(&y, &sys).unwrap();
        assert!(c.matrix.approx_eq(&(&uy * &ux), 1e-15));
        assert!(!c.matrix.approx_eq(&(&ux * &uy), 1e-3));
    }

    #[test]
    fn canonical_phase_strips_global_phase() {
        let prog = parse(fixtures::CNOT_V1).unwrap();
        let c = compile(&prog.sequences[0], &prog.system).unwrap();
        assert!(c.canonical_phase().approx_eq(&crate::spinops::cnot(), 1e-10));
    }
}
