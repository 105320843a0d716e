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

//! Seeded random sequences for sweeps, property checks and benchmarks.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ast::{EventKind, SequenceAst};
use crate::dynamics::SpinSystem;
use crate::spinops::Axis;

/// Angles biased toward the values real sequences use, so that the optimizer
/// finds something to merge or cancel.
const COMMON_DEGREES: [f64; 9] = [90.0, -90.0, 180.0, -180.0, 45.0, 360.0, 0.0, 270.0, -45.0];

fn angle<R: Rng>(rng: &mut R) -> f64 {
    if rng.random_bool(0.6) {
        *COMMON_DEGREES.choose(rng).expect("non-empty")
    } else {
        rng.random_range(-720.0..720.0)
    }
}

fn random_event<R: Rng>(rng: &mut R, sys: &SpinSystem, prev: Option<&EventKind>) -> EventKind {
    // Sometimes repeat or invert the previous event to exercise the rewrites.
    if let Some(p) = prev {
        if rng.random_bool(0.25) {
            let mut e = p.clone();
            match &mut e {
                EventKind::Pulse { degrees, .. }
                | EventKind::ZComposite { degrees, .. }
                | EventKind::Couple { degrees, .. } => {
                    if rng.random_bool(0.5) {
                        *degrees = -*degrees;
                    }
                }
                EventKind::Delay { .. } => {}
            }
            return e;
        }
    }
    let labels: Vec<&str> = sys.spins().iter().map(|s| s.label.as_str()).collect();
    let target = labels.choose(rng).expect("at least one spin").to_string();
    let choice = rng.random_range(0..10);
    match choice {
        0..=4 => EventKind::Pulse {
            target,
            axis: *Axis::ALL.choose(rng).expect("axes"),
            degrees: angle(rng),
        },
        5 | 6 => EventKind::ZComposite {
            target,
            degrees: angle(rng),
        },
        7 if !sys.couplings().is_empty() => {
            let c = sys.couplings().choose(rng).expect("non-empty");
            EventKind::Couple {
                a: c.a.clone(),
                b: c.b.clone(),
                degrees: angle(rng),
            }
        }
        _ => {
            let seconds = if rng.random_bool(0.15) {
                0.0
            } else {
                rng.random_range(0.0..0.02)
            };
            EventKind::Delay {
                seconds,
                refocus: rng.random_bool(0.5),
            }
        }
    }
}

/// Up to `max_events` events acting on `sys`.
pub fn random_sequence<R: Rng>(rng: &mut R, sys: &SpinSystem, max_events: usize) -> SequenceAst {
    let n = rng.random_range(0..=max_events);
    let mut kinds: Vec<EventKind> = Vec::with_capacity(n);
    for _ in 0..n {
        let e = random_event(rng, sys, kinds.last());
        kinds.push(e);
    }
    SequenceAst::new("random", kinds)
}

/// `count` sequences, each drawn from its own stream derived from `seed`.
///
/// Sequence `i` depends only on `(seed, i)`, so batches can be generated or
/// evaluated in any order.
pub fn random_batch(seed: u64, count: usize, sys: &SpinSystem, max_events: usize) -> Vec<SequenceAst> {
    (0..count)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let mut s = random_sequence(&mut rng, sys, max_events);
            s.name = format!("random_{i}");
            s
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn batches_are_reproducible() {
        let sys = SpinSystem::xe_h_default();
        let a = random_batch(7, 20, &sys, 20);
        let b = random_batch(7, 20, &sys, 20);
        assert_eq!(a, b);
        let c = random_batch(8, 20, &sys, 20);
        assert_ne!(a, c);
        assert!(a.iter().all(|s| s.len() <= 20));
    }
}
