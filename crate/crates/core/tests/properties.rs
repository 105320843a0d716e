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

use std::f64::consts::PI;

use nmrlogic::dynamics::{
    coupling_propagator, delay_propagator, rotation_propagator, t1_decay, DensityState, RelaxationParams,
    SpinSystem,
};
use nmrlogic::opnmr::{
    cross_polarize, overhauser_shift, pump, Cell, ElectronSz, Helicity, OverhauserModel, PumpConfig,
};
use nmrlogic::seqlang::random::random_sequence;
use nmrlogic::seqlang::{compile, equivalent_global_phase, expand_composite_z, parse, Program};
use nmrlogic::spinops::{expm_hermitian, kron, phase_fidelity, Axis, ComplexMatrix};
use num_complex::Complex64 as C64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), dim * dim).prop_map(move |v| {
        let rows: Vec<Vec<C64>> = v
            .chunks(dim)
            .map(|r| r.iter().map(|&(a, b)| C64::new(a, b)).collect())
            .collect();
        ComplexMatrix::from_rows(&rows).expect("square")
    })
}

fn hermitian(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    matrix(dim).prop_map(|m| (&m + &m.dagger()).scale(C64::new(5.0, 0.0)))
}

fn axis() -> impl Strategy<Value = Axis> {
    prop::sample::select(Axis::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn kron_is_associative(a in matrix(2), b in matrix(2), c in matrix(2)) {
        let left = kron(&kron(&a, &b), &c);
        let right = kron(&a, &kron(&b, &c));
        prop_assert!(left.approx_eq(&right, 1e-12));
    }

    #[test]
    fn kron_mixed_product(a in matrix(2), b in matrix(2), c in matrix(2), d in matrix(2)) {
        let lhs = &kron(&a, &b) * &kron(&c, &d);
        let rhs = kron(&(&a * &c), &(&b * &d));
        prop_assert!(lhs.approx_eq(&rhs, 1e-12));
    }

    #[test]
    fn hermitian_exponential_is_unitary(h in hermitian(4), t in -3.0..3.0f64) {
        let u = expm_hermitian(&h, C64::new(0.0, t)).unwrap();
        prop_assert!(u.unitarity_deviation() <= 1e-10);
    }

    #[test]
    fn fidelity_ignores_global_phase(seed in any::<u64>(), phi in -PI..PI) {
        let sys = SpinSystem::xe_h_default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = compile(&random_sequence(&mut rng, &sys, 12), &sys).unwrap().matrix;
        let v = u.scale(C64::from_polar(1.0, phi));
        prop_assert!((phase_fidelity(&u, &v).unwrap() - 1.0).abs() <= 1e-12);
        prop_assert!(equivalent_global_phase(&u, &v).unwrap());
    }

    #[test]
    fn printed_program_parses_back(seed in any::<u64>()) {
        let sys = SpinSystem::xe_h_default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut seq = random_sequence(&mut rng, &sys, 15);
        seq.name = "s".into();
        let program = Program { system: sys, sequences: vec![seq] };
        let text = program.to_string();
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back.sequences, &program.sequences);
        prop_assert_eq!(back.system.spins(), program.system.spins());
        prop_assert_eq!(back.system.couplings(), program.system.couplings());
    }

    #[test]
    fn concatenation_compiles_to_product(s1 in any::<u64>(), s2 in any::<u64>()) {
        let sys = SpinSystem::xe_h_default();
        let a = random_sequence(&mut ChaCha8Rng::seed_from_u64(s1), &sys, 10);
        let b = random_sequence(&mut ChaCha8Rng::seed_from_u64(s2), &sys, 10);
        let ab = compile(&a.concat(&b), &sys).unwrap().matrix;
        let product = &compile(&b, &sys).unwrap().matrix * &compile(&a, &sys).unwrap().matrix;
        prop_assert!(ab.approx_eq(&product, 1e-10));
    }

    #[test]
    fn composite_expansion_is_idempotent(seed in any::<u64>()) {
        let sys = SpinSystem::xe_h_default();
        let s = random_sequence(&mut ChaCha8Rng::seed_from_u64(seed), &sys, 15);
        let once = expand_composite_z(&s);
        prop_assert_eq!(expand_composite_z(&once), once.clone());
        let u = compile(&s, &sys).unwrap();
        let v = compile(&once, &sys).unwrap();
        prop_assert!(u.matrix.approx_eq(&v.matrix, 1e-10));
    }

    #[test]
    fn helicity_flip_mirrors_polarization(power in 0.0..100.0f64, p_sat in 0.01..10.0f64) {
        let cell = Cell::new(0, 0.0, 1.0);
        let a = pump(&cell, PumpConfig::new(Helicity::SigmaMinus, power).unwrap(), p_sat).unwrap();
        let b = pump(&cell, PumpConfig::new(Helicity::SigmaPlus, power).unwrap(), p_sat).unwrap();
        prop_assert_eq!(a.electron_sz.value(), -b.electron_sz.value());
        prop_assert_eq!(a.nuclear_polarization(), -b.nuclear_polarization());
        prop_assert!(a.electron_sz.value() >= 0.0 && a.electron_sz.value() < 0.5);
    }

    #[test]
    fn cross_polarization_is_convex(src in -1.0..1.0f64, tgt in -1.0..1.0f64, eta in 0.0..=1.0f64) {
        let out = cross_polarize(src, tgt, eta).unwrap();
        prop_assert!(out >= src.min(tgt) - 1e-15 && out <= src.max(tgt) + 1e-15);
    }

    #[test]
    fn overhauser_shift_is_linear(a in -1e6..1e6f64, rho in 0.0..5.0f64, s1 in -0.5..=0.5f64, s2 in -0.5..=0.5f64) {
        let m = OverhauserModel::phosphorus(a, rho, 1.0).unwrap();
        let sum = ElectronSz::new((s1 + s2) / 2.0).unwrap();
        let lhs = overhauser_shift(&m, sum);
        let rhs = 0.5 * (overhauser_shift(&m, ElectronSz::new(s1).unwrap())
            + overhauser_shift(&m, ElectronSz::new(s2).unwrap()));
        prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + lhs.abs()));
        let scaled = OverhauserModel { density_rho: 2.0 * rho, ..m };
        let s = ElectronSz::new(s1).unwrap();
        prop_assert!((overhauser_shift(&scaled, s) - 2.0 * overhauser_shift(&m, s)).abs() <= 1e-9 * (1.0 + lhs.abs()));
    }

    #[test]
    fn t1_decay_is_monotone(p0 in -0.9..0.9f64, peq in -1e-5..1e-5f64, t1 in 1.0..1e6f64, t in 0.0..1e6f64, dt in 0.0..1e6f64) {
        let state = DensityState::from_polarizations(&[p0], &[peq]).unwrap();
        let params = RelaxationParams::uniform(1, t1, 20.0).unwrap();
        let a = t1_decay(&state, &params, t).unwrap().polarization()[0];
        let b = t1_decay(&state, &params, t + dt).unwrap().polarization()[0];
        prop_assert!((b - peq).abs() <= (a - peq).abs() + 1e-15);
        prop_assert!((a - peq).abs() <= (p0 - peq).abs() + 1e-15);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn propagators_are_unitary(
        ax in axis(),
        target in prop::sample::select(vec!["A", "B"]),
        angle in -4.0 * PI..4.0 * PI,
        t in 0.0..0.1f64,
        refocus in any::<bool>(),
        offset in -500.0..500.0f64,
    ) {
        let sys = SpinSystem::xe_h_default().with_offset_hz("A", offset).unwrap();
        for u in [
            rotation_propagator(&sys, target, ax, angle).unwrap(),
            coupling_propagator(&sys, ("A", "B"), angle).unwrap(),
            delay_propagator(&sys, t, refocus).unwrap(),
        ] {
            prop_assert!(u.unitarity_deviation() <= 1e-10);
        }
    }
}
