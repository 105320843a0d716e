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

//! Optical pumping of conduction electrons and the cells they live in.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::OpnmrError;
use crate::dynamics::DensityState;

/// Default band gap, eV.
pub const DEFAULT_BAND_GAP_EV: f64 = 1.42;
/// Default saturation power, relative units.
pub const DEFAULT_P_SAT: f64 = 1.0;

/// Circular polarization of the pump beam.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Helicity {
    /// σ⁺: pumps electrons (and, through the hyperfine contact, nuclei) down.
    #[serde(rename = "sigma+")]
    SigmaPlus,
    /// σ⁻: pumps electrons and nuclei up.
    #[serde(rename = "sigma-")]
    SigmaMinus,
}

impl Helicity {
    /// Sign of the polarization this helicity produces.
    pub fn polarization_sign(self) -> f64 {
        match self {
            Helicity::SigmaMinus => 1.0,
            Helicity::SigmaPlus => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Helicity::SigmaMinus => Helicity::SigmaPlus,
            Helicity::SigmaPlus => Helicity::SigmaMinus,
        }
    }
}

impl fmt::Display for Helicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Helicity::SigmaPlus => "sigma+",
            Helicity::SigmaMinus => "sigma-",
        })
    }
}

impl FromStr for Helicity {
    type Err = OpnmrError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sigma+" | "σ+" | "σ⁺" => Ok(Helicity::SigmaPlus),
            "sigma-" | "σ-" | "σ⁻" => Ok(Helicity::SigmaMinus),
            other => Err(OpnmrError::Config(format!("unknown helicity `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PumpConfig {
    pub helicity: Helicity,
    /// Relative power, ≥ 0.
    pub power: f64,
    #[serde(default = "default_band_gap")]
    pub band_gap: f64,
}

fn default_band_gap() -> f64 {
    DEFAULT_BAND_GAP_EV
}

impl PumpConfig {
    pub fn new(helicity: Helicity, power: f64) -> Result<Self, OpnmrError> {
        let cfg = PumpConfig {
            helicity,
            power,
            band_gap: DEFAULT_BAND_GAP_EV,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn off() -> Self {
        PumpConfig {
            helicity: Helicity::SigmaMinus,
            power: 0.0,
            band_gap: DEFAULT_BAND_GAP_EV,
        }
    }

    pub fn validate(&self) -> Result<(), OpnmrError> {
        if !(self.power >= 0.0) || !self.power.is_finite() {
            return Err(OpnmrError::NegativePower(self.power));
        }
        Ok(())
    }
}

/// `P / (P + P_sat)`.
pub fn saturation(power: f64, p_sat: f64) -> f64 {
    if power <= 0.0 {
        0.0
    } else {
        power / (power + p_sat)
    }
}

/// Electron spin expectation ⟨S_z⟩, bounded by ±1/2.
#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct ElectronSz(f64);

impl ElectronSz {
    pub const UP: ElectronSz = ElectronSz(0.5);
    pub const DOWN: ElectronSz = ElectronSz(-0.5);
    pub const ZERO: ElectronSz = ElectronSz(0.0);

    pub fn new(value: f64) -> Result<Self, OpnmrError> {
        if !(value.abs() <= 0.5) {
            return Err(OpnmrError::ElectronPolarization(value));
        }
        Ok(ElectronSz(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for ElectronSz {
    type Error = OpnmrError;

    fn try_from(v: f64) -> Result<Self, Self::Error> {
        ElectronSz::new(v)
    }
}

impl From<ElectronSz> for f64 {
    fn from(s: ElectronSz) -> f64 {
        s.0
    }
}

/// One semiconductor cell: a pumped electron population acting as control
/// and a single ³¹P nuclear qubit.
#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    pub index: usize,
    /// Position along the gradient axis, metres.
    pub z: f64,
    pub pump: PumpConfig,
    pub electron_sz: ElectronSz,
    /// Electron density envelope ρ(z′) at the nucleus.
    pub density_rho: f64,
    /// Single-spin nuclear state.
    pub qubit: DensityState,
}

impl Cell {
    /// Unpumped cell with a maximally mixed nucleus.
    pub fn new(index: usize, z: f64, density_rho: f64) -> Self {
        Cell {
            index,
            z,
            pump: PumpConfig::off(),
            electron_sz: ElectronSz::ZERO,
            density_rho,
            qubit: DensityState::from_polarizations(&[0.0], &[0.0]).expect("mixed state"),
        }
    }

    /// Nuclear polarization ⟨2I_z⟩ of the qubit.
    pub fn nuclear_polarization(&self) -> f64 {
        self.qubit.polarization()[0]
    }
}

/// Pump a cell.
///
/// σ⁻ drives ⟨S_z⟩ toward +1/2, σ⁺ toward −1/2, scaled by the saturation
/// law. The hyperfine contact then leaves the nucleus polarized with the same
/// sign and fraction (`⟨2I_z⟩ = 2⟨S_z⟩`). Zero power leaves the nucleus alone.
pub fn pump(cell: &Cell, config: PumpConfig, p_sat: f64) -> Result<Cell, OpnmrError> {
    config.validate()?;
    let sz = 0.5 * config.helicity.polarization_sign() * saturation(config.power, p_sat);
    let mut out = cell.clone();
    out.pump = config;
    out.electron_sz = ElectronSz::new(sz)?;
    if sz != 0.0 {
        out.qubit = DensityState::from_polarizations(&[2.0 * sz], &[0.0])?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fresh() -> Cell {
        Cell::new(0, 0.0, 1.0)
    }

    #[test]
    fn sigma_minus_saturates_up() {
        let c = pump(&fresh(), PumpConfig::new(Helicity::SigmaMinus, 1e9).unwrap(), 1.0).unwrap();
        assert!((c.electron_sz.value() - 0.5).abs() < 1e-8);
        assert!((c.nuclear_polarization() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn sigma_plus_mirrors() {
        let up = pump(&fresh(), PumpConfig::new(Helicity::SigmaMinus, 3.0).unwrap(), 1.0).unwrap();
        let down = pump(&fresh(), PumpConfig::new(Helicity::SigmaPlus, 3.0).unwrap(), 1.0).unwrap();
        assert_eq!(down.electron_sz.value(), -up.electron_sz.value());
        assert_eq!(down.nuclear_polarization(), -up.nuclear_polarization());
        assert_eq!(up.electron_sz.value(), 0.5 * 0.75);
    }

    #[test]
    fn zero_power_does_nothing() {
        let c = pump(&fresh(), PumpConfig::new(Helicity::SigmaMinus, 0.0).unwrap(), 1.0).unwrap();
        assert_eq!(c.electron_sz, ElectronSz::ZERO);
        assert_eq!(c.qubit, fresh().qubit);
    }

    #[test]
    fn invalid_inputs() {
        assert!(PumpConfig::new(Helicity::SigmaMinus, -1.0).is_err());
        assert!(ElectronSz::new(0.6).is_err());
        assert!(ElectronSz::new(f64::NAN).is_err());
        assert!("sigma*".parse::<Helicity>().is_err());
        assert_eq!("sigma+".parse::<Helicity>().unwrap(), Helicity::SigmaPlus);
    }
}
