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

//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Run with `cargo test -p nmrlogic --test acceptance`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::time::{Duration, Instant};

use nmrlogic::dynamics::convention::{matching, sqrt_minus_i_cnot};
use nmrlogic::dynamics::{
    coupling_propagator, delay_propagator, evolve, fid_and_spectrum, hyperpolarized_state,
    rotation_propagator, thermal_state, Convention, DensityState, RelaxationParams, SpinSystem,
};
use nmrlogic::opnmr::{conditional_truth_table, Lattice, LatticeConfig, OpnmrError, OverhauserModel};
use nmrlogic::parallel::{map, Execution};
use nmrlogic::seqlang::random::random_batch;
use nmrlogic::seqlang::{compile, expand_composite_z, fixtures, optimize, parse, EventKind, SequenceAst};
use nmrlogic::spinops::{phase_fidelity, Axis, ComplexMatrix, MatrixDocument};
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20260214;

const TOL_CNOT_V1: f64 = 1e-10;
const MAX_RUNTIME_V1: Duration = Duration::from_secs(1);
const TOL_CNOT_V2: f64 = 1e-10;
const TOL_COUPLING: f64 = 1e-12;
const TOL_UNITARITY: f64 = 1e-10;
const TOL_COMPOSITE_Z: f64 = 1e-12;
const TOL_OPTIMIZER_FIDELITY: f64 = 1e-9;
const MIN_TRUTH_FIDELITY: f64 = 0.999;
const MAX_RESOLUTION_HZ: f64 = 1.0;
const TOL_ENHANCEMENT_RATIO: f64 = 1e-6;
const TOL_CONVENTION: f64 = 1e-10;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn load_sequence(text: &str, name: &str) -> (SpinSystem, SequenceAst) {
    let program = parse(text).expect("fixture parses");
    let seq = program.sequence(name).expect("fixture sequence").clone();
    (program.system, seq)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (sys, seq) = load_sequence(fixtures::CNOT_V1, "cnot_v1");
    let u = compile(&seq, &sys).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let dev = u.matrix.max_abs_diff(&sqrt_minus_i_cnot());
    check(
        dev <= TOL_CNOT_V1 && elapsed < MAX_RUNTIME_V1,
        format!("max |dU| = {dev:.2e} (tol {TOL_CNOT_V1:.0e}), runtime {elapsed:?}"),
    )
}

fn criterion_2() -> Outcome {
    let (sys, seq) = load_sequence(fixtures::CNOT_V2, "cnot_v2");
    let u = compile(&seq, &sys).map_err(|e| e.to_string())?;
    let doc: MatrixDocument = serde_json::from_str(fixtures::CNOT_V2_EXPECTED).map_err(|e| e.to_string())?;
    let want = doc.to_matrix().map_err(|e| e.to_string())?;
    let dev = u.matrix.max_abs_diff(&want);
    check(
        dev <= TOL_CNOT_V2,
        format!("max |dU| = {dev:.2e} (tol {TOL_CNOT_V2:.0e})"),
    )
}

fn criterion_3() -> Outcome {
    let sys = SpinSystem::xe_h_default();
    let j = sys.coupling_hz("A", "B").expect("coupling");
    let tau = 1.0 / (2.0 * j);
    let a = C64::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2);
    let want = ComplexMatrix::from_diag(&[a, a.conj(), a.conj(), a]);
    let delay = delay_propagator(&sys, tau, true).map_err(|e| e.to_string())?;
    let coupling = coupling_propagator(&sys, ("A", "B"), PI * j * tau).map_err(|e| e.to_string())?;
    let dev = delay.max_abs_diff(&want).max(coupling.max_abs_diff(&want));
    check(
        dev <= TOL_COUPLING,
        format!("max |dU| = {dev:.2e} (tol {TOL_COUPLING:.0e})"),
    )
}

fn criterion_4() -> Outcome {
    let sys = SpinSystem::xe_h_default();
    let batch = random_batch(SEED, 200, &sys, 20);
    let devs = map(&batch, Execution::Parallel, |s| {
        compile(s, &sys).map(|u| u.matrix.unitarity_deviation())
    });
    let mut worst = 0.0f64;
    for d in devs {
        worst = worst.max(d.map_err(|e| e.to_string())?);
    }
    check(
        worst <= TOL_UNITARITY && batch.len() == 200,
        format!("200 sequences, worst |U'U - I| = {worst:.2e} (tol {TOL_UNITARITY:.0e})"),
    )
}

fn criterion_5() -> Outcome {
    let sys = SpinSystem::xe_h_default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let degrees: f64 = rng.random_range(-360.0..360.0);
        let target = if rng.random_bool(0.5) { "A" } else { "B" };
        let seq = SequenceAst::new(
            "z",
            vec![EventKind::ZComposite {
                target: target.into(),
                degrees,
            }],
        );
        let expanded = expand_composite_z(&seq);
        let composite = compile(&expanded, &sys).map_err(|e| e.to_string())?;
        let direct =
            rotation_propagator(&sys, target, Axis::Z, degrees.to_radians()).map_err(|e| e.to_string())?;
        worst = worst.max(composite.matrix.max_abs_diff(&direct));
    }
    check(
        worst <= TOL_COMPOSITE_Z,
        format!("20 angles, worst |dU| = {worst:.2e} (tol {TOL_COMPOSITE_Z:.0e})"),
    )
}

fn criterion_6() -> Outcome {
    let sys = SpinSystem::xe_h_default();
    let batch = random_batch(SEED + 1, 100, &sys, 20);
    let results = map(&batch, Execution::Parallel, |s| -> Result<(f64, bool), String> {
        let opt = optimize(s);
        let before = compile(s, &sys).map_err(|e| e.to_string())?;
        let after = compile(&opt, &sys).map_err(|e| e.to_string())?;
        let f = phase_fidelity(&before.matrix, &after.matrix).map_err(|e| e.to_string())?;
        Ok((f, opt.len() <= s.len()))
    });
    let mut worst = 0.0f64;
    let mut grew = 0;
    for r in results {
        let (f, shrank) = r?;
        worst = worst.max((1.0 - f).abs());
        grew += usize::from(!shrank);
    }
    check(
        worst <= TOL_OPTIMIZER_FIDELITY && grew == 0,
        format!("100 sequences, worst |1 - F| = {worst:.2e} (tol {TOL_OPTIMIZER_FIDELITY:.0e}), {grew} grew"),
    )
}

fn criterion_7() -> Outcome {
    let bandwidth = 1e4;
    let model = OverhauserModel::phosphorus(10.0 * bandwidth, 1.0, 2.0).map_err(|e| e.to_string())?;
    let rows = conditional_truth_table(&model, bandwidth).map_err(|e| e.to_string())?;
    let correct = rows.iter().all(|r| r.nucleus_out == r.nucleus_in ^ r.control);
    let worst = rows.iter().map(|r| r.fidelity).fold(1.0, f64::min);
    check(
        rows.len() == 4 && correct && worst >= MIN_TRUTH_FIDELITY,
        format!(
            "4 inputs, permutation {}, min fidelity {worst:.6}",
            if correct { "ok" } else { "wrong" }
        ),
    )
}

/// 90° y pulse on `label`, turning its longitudinal polarization transverse.
fn read_pulse(state: &DensityState, sys: &SpinSystem, label: &str) -> Result<DensityState, String> {
    let u = rotation_propagator(sys, label, Axis::Y, PI / 2.0).map_err(|e| e.to_string())?;
    evolve(state, &u).map_err(|e| e.to_string())
}

fn criterion_8() -> Outcome {
    let (n, dwell) = (2048usize, 1.0 / 1024.0);
    let resolution = 1.0 / (n as f64 * dwell);
    let mut detail = Vec::new();
    let mut ok = resolution <= MAX_RESOLUTION_HZ;
    for j in [10.0, 50.0, 100.0] {
        let sys = SpinSystem::new(0.1)
            .with_spin("B", "129Xe")
            .and_then(|s| s.with_spin("A", "1H"))
            .and_then(|s| s.with_coupling("A", "B", j))
            .map_err(|e| e.to_string())?;
        let state = read_pulse(&thermal_state(&sys, 300.0).map_err(|e| e.to_string())?, &sys, "A")?;
        let params = RelaxationParams::uniform(2, 1.8e6, 1.0).map_err(|e| e.to_string())?;
        let spec = fid_and_spectrum(&state, &sys, &params, "A", n, dwell).map_err(|e| e.to_string())?;
        let peaks = spec.peaks(0.5);
        if peaks.len() < 2 {
            ok = false;
            detail.push(format!("J={j}: {} peaks", peaks.len()));
            continue;
        }
        let split = (peaks[0].frequency_hz - peaks[1].frequency_hz).abs();
        ok &= (split - j).abs() <= resolution;
        detail.push(format!("J={j}: {split:.3}"));
    }

    let sys = SpinSystem::xe_h_default();
    let params = RelaxationParams::uniform(2, 1.8e6, 20.0).map_err(|e| e.to_string())?;
    let thermal = read_pulse(&thermal_state(&sys, 300.0).map_err(|e| e.to_string())?, &sys, "B")?;
    let hyper = hyperpolarized_state(&sys, 300.0, "B", 1e5, 1.0).map_err(|e| e.to_string())?;
    let hyper = read_pulse(&hyper, &sys, "B")?;
    let amp = |s| -> Result<f64, String> {
        let spec = fid_and_spectrum(s, &sys, &params, "B", n, dwell).map_err(|e| e.to_string())?;
        Ok(spec.magnitudes().into_iter().fold(0.0, f64::max))
    };
    let ratio = amp(&hyper)? / amp(&thermal)?;
    let rel = (ratio / 1e5 - 1.0).abs();
    ok &= rel <= TOL_ENHANCEMENT_RATIO;
    check(
        ok,
        format!(
            "resolution {resolution} Hz, splittings [{}], enhancement ratio {ratio:.6e} (rel err {rel:.1e})",
            detail.join(", ")
        ),
    )
}

fn criterion_9() -> Outcome {
    let sizes: Vec<usize> = (2..=16).collect();
    let hops = map(&sizes, Execution::Parallel, |&n| -> Result<usize, OpnmrError> {
        let lattice = Lattice::new(LatticeConfig::default_chain(n))?;
        Ok(lattice.ca_transport(0, n - 1)?.1.hops)
    });
    let mut ok = true;
    for (n, h) in sizes.iter().zip(hops) {
        ok &= h.map_err(|e| e.to_string())? == n - 1;
    }
    let mut cfg = LatticeConfig::default_chain(5);
    cfg.cells[2].power = 0.0;
    let blocked = Lattice::new(cfg).map_err(|e| e.to_string())?.ca_transport(0, 4);
    let blocks = matches!(blocked, Err(OpnmrError::TransportBlocked { cell: 2 }));
    check(
        ok && blocks,
        format!(
            "hops = N-1 for N in 2..=16: {}, zero-power middle cell blocks: {}",
            if ok { "yes" } else { "no" },
            if blocks { "yes" } else { "no" }
        ),
    )
}

fn criterion_10() -> Outcome {
    let sys = SpinSystem::xe_h_default();
    let found = matching(&sys, "B", "A", TOL_CONVENTION).map_err(|e| e.to_string())?;
    let fixture: Convention =
        serde_json::from_str(include_str!("../fixtures/convention.json")).map_err(|e| e.to_string())?;
    check(
        found.len() == 1 && found[0] == fixture,
        format!(
            "{} of 8 combinations match; fixture {}",
            found.len(),
            serde_json::to_string(&fixture).unwrap()
        ),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("five-pulse CNOT", criterion_1),
        ("three-pulse CNOT matrix", criterion_2),
        ("coupling closed form", criterion_3),
        ("random-sequence unitarity", criterion_4),
        ("composite z exactness", criterion_5),
        ("optimizer soundness", criterion_6),
        ("conditional-flip truth table", criterion_7),
        ("spectrum doublets and enhancement", criterion_8),
        ("lattice transport timing", criterion_9),
        ("convention freeze", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
