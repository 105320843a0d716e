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

//! Spin systems: labeled spins, resonance offsets and scalar couplings.

use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::DynamicsError;
use crate::spinops::SpinIndex;

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant, J/K.
pub const K_B: f64 = 1.380_649e-23;

/// Largest system the dense engine accepts.
pub const MAX_SPINS: usize = 3;

/// Gyromagnetic ratios in rad·s⁻¹·T⁻¹ for the isotopes this crate knows by name.
pub const ISOTOPES: &[(&str, f64)] = &[
    ("1H", 2.6752e8),
    ("13C", 6.7283e7),
    ("31P", 1.0841e8),
    ("129Xe", -7.452e7),
    ("131Xe", 2.2091e7),
];

pub fn isotope_gamma(isotope: &str) -> Option<f64> {
    ISOTOPES
        .iter()
        .find(|(name, _)| *name == isotope)
        .map(|&(_, g)| g)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spin {
    pub label: String,
    pub isotope: String,
    /// Gyromagnetic ratio, rad·s⁻¹·T⁻¹.
    pub gamma: f64,
    /// Resonance offset Ω in the rotating frame, rad/s.
    #[serde(default)]
    pub offset: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Coupling {
    pub a: String,
    pub b: String,
    /// Scalar coupling constant, Hz.
    pub j_hz: f64,
}

/// Two or three weakly coupled spins in a static field.
///
/// The order of `spins` is the tensor-product order: the first spin is the
/// leftmost Kronecker factor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinSystem {
    spins: Vec<Spin>,
    #[serde(default)]
    couplings: Vec<Coupling>,
    /// Static field, tesla.
    b0: f64,
}

impl SpinSystem {
    pub fn new(b0: f64) -> Self {
        SpinSystem {
            spins: Vec::new(),
            couplings: Vec::new(),
            b0,
        }
    }

    /// Xe–H demonstration system: ¹²⁹Xe (`B`, control) as the first factor,
    /// ¹H (`A`, target) second, J = 100 Hz, zero offsets, 0.1 T.
    pub fn xe_h_default() -> Self {
        SpinSystem::new(0.1)
            .with_spin("B", "129Xe")
            .and_then(|s| s.with_spin("A", "1H"))
            .and_then(|s| s.with_coupling("A", "B", 100.0))
            .expect("default system is valid")
    }

    /// Add a spin whose γ comes from the isotope table.
    pub fn with_spin(self, label: &str, isotope: &str) -> Result<Self, DynamicsError> {
        let gamma =
            isotope_gamma(isotope).ok_or_else(|| DynamicsError::UnknownIsotope(isotope.to_string()))?;
        self.with_spin_gamma(label, isotope, gamma)
    }

    pub fn with_spin_gamma(mut self, label: &str, isotope: &str, gamma: f64) -> Result<Self, DynamicsError> {
        if self.spins.iter().any(|s| s.label == label) {
            return Err(DynamicsError::DuplicateLabel(label.to_string()));
        }
        if self.spins.len() == MAX_SPINS {
            return Err(DynamicsError::TooManySpins(self.spins.len() + 1));
        }
        self.spins.push(Spin {
            label: label.to_string(),
            isotope: isotope.to_string(),
            gamma,
            offset: 0.0,
        });
        Ok(self)
    }

    pub fn with_offset_hz(mut self, label: &str, hz: f64) -> Result<Self, DynamicsError> {
        let i = self.index_of(label)?;
        self.spins[i].offset = 2.0 * PI * hz;
        Ok(self)
    }

    pub fn with_coupling(mut self, a: &str, b: &str, j_hz: f64) -> Result<Self, DynamicsError> {
        self.index_of(a)?;
        self.index_of(b)?;
        if a == b {
            return Err(DynamicsError::InvalidCoupling(format!("{a} coupled to itself")));
        }
        if !j_hz.is_finite() {
            return Err(DynamicsError::InvalidCoupling(format!(
                "J({a},{b}) is not finite"
            )));
        }
        if self.coupling_hz(a, b).is_some() {
            return Err(DynamicsError::InvalidCoupling(format!(
                "J({a},{b}) declared twice"
            )));
        }
        self.couplings.push(Coupling {
            a: a.to_string(),
            b: b.to_string(),
            j_hz,
        });
        Ok(self)
    }

    /// Same system with the spins reordered; `order[k]` names the spin that
    /// becomes factor `k`.
    pub fn reordered(&self, order: &[&str]) -> Result<Self, DynamicsError> {
        if order.len() != self.spins.len() {
            return Err(DynamicsError::InvalidCoupling(
                "reorder must list every spin".into(),
            ));
        }
        let mut spins = Vec::with_capacity(order.len());
        for label in order {
            spins.push(self.spins[self.index_of(label)?].clone());
        }
        let out = SpinSystem {
            spins,
            couplings: self.couplings.clone(),
            b0: self.b0,
        };
        out.validate()?;
        Ok(out)
    }

    /// Check the invariants a deserialized document may violate.
    pub fn validate(&self) -> Result<(), DynamicsError> {
        if self.spins.is_empty() {
            return Err(DynamicsError::TooManySpins(0));
        }
        if self.spins.len() > MAX_SPINS {
            return Err(DynamicsError::TooManySpins(self.spins.len()));
        }
        for (i, s) in self.spins.iter().enumerate() {
            if self.spins[..i].iter().any(|t| t.label == s.label) {
                return Err(DynamicsError::DuplicateLabel(s.label.clone()));
            }
        }
        for (i, c) in self.couplings.iter().enumerate() {
            self.index_of(&c.a)?;
            self.index_of(&c.b)?;
            if c.a == c.b {
                return Err(DynamicsError::InvalidCoupling(format!(
                    "{} coupled to itself",
                    c.a
                )));
            }
            let dup = self.couplings[..i]
                .iter()
                .any(|d| (d.a == c.a && d.b == c.b) || (d.a == c.b && d.b == c.a));
            if dup {
                return Err(DynamicsError::InvalidCoupling(format!(
                    "J({},{}) declared twice",
                    c.a, c.b
                )));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, DynamicsError> {
        let sys: SpinSystem = serde_json::from_str(text).map_err(|e| DynamicsError::Config(e.to_string()))?;
        sys.validate()?;
        Ok(sys)
    }

    pub fn load(path: &Path) -> Result<Self, DynamicsError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| DynamicsError::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spin system serializes")
    }

    pub fn spins(&self) -> &[Spin] {
        &self.spins
    }

    pub fn couplings(&self) -> &[Coupling] {
        &self.couplings
    }

    pub fn nspins(&self) -> usize {
        self.spins.len()
    }

    pub fn dim(&self) -> usize {
        1 << self.spins.len()
    }

    pub fn b0(&self) -> f64 {
        self.b0
    }

    pub fn index_of(&self, label: &str) -> Result<usize, DynamicsError> {
        self.spins
            .iter()
            .position(|s| s.label == label)
            .ok_or_else(|| DynamicsError::UnknownSpin(label.to_string()))
    }

    pub fn spin_index(&self, label: &str) -> Result<SpinIndex, DynamicsError> {
        Ok(SpinIndex::new(self.index_of(label)?, self.nspins())?)
    }

    pub fn spin(&self, label: &str) -> Result<&Spin, DynamicsError> {
        Ok(&self.spins[self.index_of(label)?])
    }

    /// J for an unordered pair, if declared.
    pub fn coupling_hz(&self, a: &str, b: &str) -> Option<f64> {
        self.couplings
            .iter()
            .find(|c| (c.a == a && c.b == b) || (c.a == b && c.b == a))
            .map(|c| c.j_hz)
    }

    /// High-temperature Boltzmann factor ε = γħB₀/(k_B T) for one spin.
    pub fn boltzmann_factor(&self, label: &str, temperature: f64) -> Result<f64, DynamicsError> {
        Ok(self.spin(label)?.gamma * HBAR * self.b0 / (K_B * temperature))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_system_layout() {
        let sys = SpinSystem::xe_h_default();
        assert_eq!(sys.nspins(), 2);
        assert_eq!(sys.index_of("B").unwrap(), 0);
        assert_eq!(sys.index_of("A").unwrap(), 1);
        assert_eq!(sys.coupling_hz("B", "A"), Some(100.0));
        assert_eq!(sys.spin("A").unwrap().gamma, 2.6752e8);
        assert_eq!(sys.spin("B").unwrap().gamma, -7.452e7);
    }

    #[test]
    fn rejects_bad_declarations() {
        let sys = SpinSystem::new(1.0).with_spin("A", "1H").unwrap();
        assert!(matches!(
            sys.clone().with_spin("A", "13C"),
            Err(DynamicsError::DuplicateLabel(_))
        ));
        assert!(matches!(
            sys.clone().with_spin("Q", "7Li"),
            Err(DynamicsError::UnknownIsotope(_))
        ));
        assert!(matches!(
            sys.clone().with_coupling("A", "Z", 10.0),
            Err(DynamicsError::UnknownSpin(_))
        ));
        assert!(matches!(
            sys.clone().with_coupling("A", "A", 10.0),
            Err(DynamicsError::InvalidCoupling(_))
        ));
        let full = sys
            .with_spin("B", "13C")
            .and_then(|s| s.with_spin("C", "31P"))
            .unwrap();
        assert!(matches!(
            full.with_spin("D", "1H"),
            Err(DynamicsError::TooManySpins(4))
        ));
    }

    #[test]
    fn json_round_trip_and_validation() {
        let sys = SpinSystem::xe_h_default().with_offset_hz("A", 12.5).unwrap();
        let back = SpinSystem::from_json(&sys.to_json()).unwrap();
        assert_eq!(back, sys);

        let dup = r#"{"spins":[{"label":"A","isotope":"1H","gamma":1.0},
                      {"label":"A","isotope":"1H","gamma":1.0}],"b0":1.0}"#;
        assert!(matches!(
            SpinSystem::from_json(dup),
            Err(DynamicsError::DuplicateLabel(_))
        ));
        let dangling = r#"{"spins":[{"label":"A","isotope":"1H","gamma":1.0}],
                           "couplings":[{"a":"A","b":"Z","j_hz":5.0}],"b0":1.0}"#;
        assert!(matches!(
            SpinSystem::from_json(dangling),
            Err(DynamicsError::UnknownSpin(_))
        ));
    }

    #[test]
    fn boltzmann_ratio_follows_gamma() {
        let sys = SpinSystem::xe_h_default();
        let ea = sys.boltzmann_factor("A", 20.0).unwrap();
        let eb = sys.boltzmann_factor("B", 20.0).unwrap();
        assert!((ea / eb - 2.6752e8 / -7.452e7).abs() < 1e-12);
    }
}
