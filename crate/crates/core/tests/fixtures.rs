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

use nmrlogic::dynamics::convention::matching;
use nmrlogic::dynamics::{Convention, SpinSystem, FROZEN};
use nmrlogic::opnmr::{Lattice, LatticeConfig, DEFAULT_LATTICE};
use nmrlogic::seqlang::{fixtures, parse};

#[test]
fn convention_fixture_is_frozen() {
    let fixture: Convention = serde_json::from_str(include_str!("../fixtures/convention.json")).unwrap();
    assert_eq!(fixture, FROZEN);
    let found = matching(&SpinSystem::xe_h_default(), "B", "A", 1e-10).unwrap();
    assert_eq!(found, vec![fixture]);
}

#[test]
fn shipped_sequences_parse() {
    for (text, name, first) in [
        (fixtures::CNOT_V1, "cnot_v1", "B"),
        (fixtures::CNOT_V2, "cnot_v2", "A"),
    ] {
        let program = parse(text).unwrap();
        assert!(program.sequence(name).is_some());
        assert_eq!(program.system.spins()[0].label, first);
        assert_eq!(program.system.coupling_hz("A", "B"), Some(100.0));
    }
}

#[test]
fn default_lattice_matches_builder() {
    let shipped = LatticeConfig::from_json(DEFAULT_LATTICE).unwrap();
    assert_eq!(shipped, LatticeConfig::default_chain(5));
    let lattice = Lattice::new(shipped).unwrap();
    assert_eq!(lattice.ca_transport(0, 4).unwrap().1.hops, 4);
}
