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

//! Sequence-to-sequence passes: composite-z expansion and pulse elimination.

use super::ast::{Event, EventKind, SequenceAst};
use crate::spinops::Axis;

/// Replace every composite z event by `x(+90) · y(θ) · x(−90)` in time order.
///
/// Conjugating a y rotation by a quarter turn about x gives exactly the z
/// rotation, with no leftover phase.
pub fn expand_composite_z(ast: &SequenceAst) -> SequenceAst {
    let mut events = Vec::with_capacity(ast.len());
    for e in &ast.events {
        match &e.kind {
            EventKind::ZComposite { target, degrees } => {
                let pulse = |axis, degrees| Event {
                    kind: EventKind::Pulse {
                        target: target.clone(),
                        axis,
                        degrees,
                    },
                    span: e.span,
                };
                events.push(pulse(Axis::X, 90.0));
                events.push(pulse(Axis::Y, *degrees));
                events.push(pulse(Axis::X, -90.0));
            }
            _ => events.push(e.clone()),
        }
    }
    SequenceAst {
        name: ast.name.clone(),
        events,
    }
}

/// Angles in degrees closer than this to a multiple of 360 count as one.
const ANGLE_EPS_DEG: f64 = 1e-9;

fn is_multiple_of(degrees: f64, period: f64) -> bool {
    let r = degrees.rem_euclid(period);
    r < ANGLE_EPS_DEG || period - r < ANGLE_EPS_DEG
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OptimizeStats {
    /// Scans over the sequence, including the final one that changed nothing.
    pub passes: usize,
    pub cancelled: usize,
    pub merged: usize,
    pub dropped: usize,
}

/// Combination of two adjacent events of the same kind on the same spins.
fn combine(a: &EventKind, b: &EventKind) -> Option<EventKind> {
    use EventKind::*;
    match (a, b) {
        (
            Pulse {
                target: t1,
                axis: x1,
                degrees: d1,
            },
            Pulse {
                target: t2,
                axis: x2,
                degrees: d2,
            },
        ) if t1 == t2 && x1 == x2 => Some(Pulse {
            target: t1.clone(),
            axis: *x1,
            degrees: d1 + d2,
        }),
        (
            ZComposite {
                target: t1,
                degrees: d1,
            },
            ZComposite {
                target: t2,
                degrees: d2,
            },
        ) if t1 == t2 => Some(ZComposite {
            target: t1.clone(),
            degrees: d1 + d2,
        }),
        (
            Couple {
                a: a1,
                b: b1,
                degrees: d1,
            },
            Couple {
                a: a2,
                b: b2,
                degrees: d2,
            },
        ) if (a1 == a2 && b1 == b2) || (a1 == b2 && b1 == a2) => Some(Couple {
            a: a1.clone(),
            b: b1.clone(),
            degrees: d1 + d2,
        }),
        (
            Delay {
                seconds: s1,
                refocus: r1,
            },
            Delay {
                seconds: s2,
                refocus: r2,
            },
        ) if r1 == r2 => Some(Delay {
            seconds: s1 + s2,
            refocus: *r1,
        }),
        _ => None,
    }
}

/// Events whose propagator is the identity up to a global phase.
///
/// A 360° rotation of one spin, or of a coupled pair, is −1 on the whole space.
fn is_trivial(kind: &EventKind) -> bool {
    match kind {
        EventKind::Delay { seconds, .. } => *seconds == 0.0,
        EventKind::Pulse { degrees, .. }
        | EventKind::ZComposite { degrees, .. }
        | EventKind::Couple { degrees, .. } => is_multiple_of(*degrees, 360.0),
    }
}

/// One left-to-right scan. Returns whether anything changed.
fn pass(events: &[Event], stats: &mut OptimizeStats) -> (Vec<Event>, bool) {
    let mut out: Vec<Event> = Vec::with_capacity(events.len());
    let mut changed = false;
    for e in events {
        if is_trivial(&e.kind) {
            stats.dropped += 1;
            changed = true;
            continue;
        }
        if let Some(prev) = out.last() {
            if let Some(joined) = combine(&prev.kind, &e.kind) {
                changed = true;
                let cancels = joined.radians().is_some_and(|_| match &joined {
                    EventKind::Pulse { degrees, .. }
                    | EventKind::ZComposite { degrees, .. }
                    | EventKind::Couple { degrees, .. } => is_multiple_of(*degrees, 720.0),
                    EventKind::Delay { .. } => false,
                });
                if cancels {
                    stats.cancelled += 1;
                    out.pop();
                } else {
                    stats.merged += 1;
                    let span = prev.span;
                    *out.last_mut().expect("non-empty") = Event { kind: joined, span };
                }
                continue;
            }
        }
        out.push(e.clone());
    }
    (out, changed)
}

/// Cancel adjacent inverse pulses, merge adjacent pulses on the same spin and
/// axis, drop identity events; repeat until nothing changes.
pub fn optimize(ast: &SequenceAst) -> SequenceAst {
    optimize_with_stats(ast).0
}

pub fn optimize_with_stats(ast: &SequenceAst) -> (SequenceAst, OptimizeStats) {
    let mut stats = OptimizeStats::default();
    let mut events = ast.events.clone();
    loop {
        stats.passes += 1;
        let (next, changed) = pass(&events, &mut stats);
        events = next;
        if !changed {
            break;
        }
    }
    (
        SequenceAst {
            name: ast.name.clone(),
            events,
        },
        stats,
    )
}
