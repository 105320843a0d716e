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

//! Overhauser-shifted nuclear resonance and the electron-controlled flip.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::pump::{Cell, ElectronSz};
use super::OpnmrError;
use crate::dynamics::{evolve, isotope_gamma, rotation_propagator, DensityState, SpinSystem};
use crate::spinops::{cnot, Axis};

/// Hyperfine shift model `Δf = A·ρ(z′)·⟨S_z⟩` on top of the Larmor frequency.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OverhauserModel {
    /// Hz per unit of ρ·⟨S_z⟩.
    pub coupling_a: f64,
    /// Electron density envelope at the nucleus, ≥ 0.
    pub density_rho: f64,
    /// Nuclear gyromagnetic ratio, rad·s⁻¹·T⁻¹.
    pub gamma: f64,
    /// Local static field, tesla.
    pub b0: f64,
}

impl OverhauserModel {
    pub fn phosphorus(coupling_a: f64, density_rho: f64, b0: f64) -> Result<Self, OpnmrError> {
        let m = OverhauserModel {
            coupling_a,
            density_rho,
            gamma: isotope_gamma("31P").expect("31P in table"),
            b0,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<(), OpnmrError> {
        if !(self.density_rho >= 0.0) {
            return Err(OpnmrError::Config(format!(
                "electron density must be non-negative, got {}",
                self.density_rho
            )));
        }
        Ok(())
    }

    pub fn larmor_hz(&self) -> f64 {
        self.gamma * self.b0 / (2.0 * PI)
    }
}

/// `Δf = A·ρ·⟨S_z⟩`, Hz.
pub fn overhauser_shift(model: &OverhauserModel, electron_sz: ElectronSz) -> f64 {
    model.coupling_a * model.density_rho * electron_sz.value()
}

/// `ν = γB₀/2π + Δf`, Hz.
pub fn resonance_frequency(model: &OverhauserModel, electron_sz: ElectronSz) -> f64 {
    model.larmor_hz() + overhauser_shift(model, electron_sz)
}

fn phosphorus_system(b0: f64) -> SpinSystem {
    SpinSystem::new(b0)
        .with_spin("P", "31P")
        .expect("single-spin system")
}

/// Apply a π pulse about x to the cell's nucleus if the pulse lies within
/// `bandwidth/2` of the cell's current resonance; otherwise leave it.
///
/// Returns the updated cell and whether the nucleus was flipped.
pub fn conditional_flip(
    cell: &Cell,
    model: &OverhauserModel,
    pulse_freq: f64,
    bandwidth: f64,
) -> Result<(Cell, bool), OpnmrError> {
    if !(bandwidth > 0.0) {
        return Err(OpnmrError::Bandwidth(bandwidth));
    }
    let detuning = (pulse_freq - resonance_frequency(model, cell.electron_sz)).abs();
    if detuning > bandwidth / 2.0 {
        return Ok((cell.clone(), false));
    }
    let sys = phosphorus_system(model.b0);
    let u = rotation_propagator(&sys, "P", Axis::X, PI)?;
    let mut out = cell.clone();
    out.qubit = evolve(&cell.qubit, &u)?;
    Ok((out, true))
}

/// Nuclear spin direction as read out through the Overhauser shift.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpinReading {
    Up,
    Down,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RamanReadout {
    /// Shift produced by the nuclear polarization acting back on the electrons, Hz.
    pub shift_hz: f64,
    pub spin: SpinReading,
}

/// Read a cell's nucleus from the sign of the shift it produces,
/// `A·ρ·⟨I_z⟩`. A vanishing shift reads as down.
pub fn raman_readout(cell: &Cell, model: &OverhauserModel) -> RamanReadout {
    let iz = cell.nuclear_polarization() / 2.0;
    let shift_hz = model.coupling_a * model.density_rho * iz;
    let spin = if shift_hz * model.coupling_a.signum() > 0.0 {
        SpinReading::Up
    } else {
        SpinReading::Down
    };
    RamanReadout { shift_hz, spin }
}

/// One row of the electron-controlled NOT truth table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruthRow {
    /// Control bit: 1 when the electron is spin up (⟨S_z⟩ = +1/2).
    pub control: usize,
    pub nucleus_in: usize,
    /// Most populated nuclear basis state after the flip.
    pub nucleus_out: usize,
    /// Population of the ideal CNOT output.
    pub fidelity: f64,
}

/// Run the four computational inputs through [`conditional_flip`], with the
/// pulse tuned to the spin-up-electron resonance.
pub fn conditional_truth_table(model: &OverhauserModel, bandwidth: f64) -> Result<Vec<TruthRow>, OpnmrError> {
    let pulse_freq = resonance_frequency(model, ElectronSz::UP);
    let ideal = cnot();
    let mut rows = Vec::with_capacity(4);
    for control in 0..2 {
        for nucleus_in in 0..2 {
            let mut cell = Cell::new(0, 0.0, model.density_rho);
            cell.electron_sz = if control == 1 {
                ElectronSz::UP
            } else {
                ElectronSz::DOWN
            };
            let pol = if nucleus_in == 0 { 1.0 } else { -1.0 };
            cell.qubit = DensityState::from_polarizations(&[pol], &[0.0])?;
            let (after, _) = conditional_flip(&cell, model, pulse_freq, bandwidth)?;
            let pops = [after.qubit.population(0), after.qubit.population(1)];
            let nucleus_out = if pops[0] >= pops[1] { 0 } else { 1 };
            // Column of the ideal CNOT for input |control, nucleus_in⟩.
            let col = 2 * control + nucleus_in;
            let want = (0..4).find(|&r| ideal[(r, col)].re == 1.0).expect("permutation");
            rows.push(TruthRow {
                control,
                nucleus_in,
                nucleus_out,
                fidelity: pops[want % 2],
            });
        }
    }
    Ok(rows)
}
