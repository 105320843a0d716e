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

//! Linear chain of optically pumped cells: mediated nearest-neighbour
//! couplings, SWAP-chain qubit transport and gradient addressing.

use std::f64::consts::PI;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::overhauser::{
    conditional_flip, raman_readout, resonance_frequency, OverhauserModel, RamanReadout,
};
use super::pump::{
    pump, saturation, Cell, ElectronSz, Helicity, PumpConfig, DEFAULT_BAND_GAP_EV, DEFAULT_P_SAT,
};
use super::OpnmrError;
use crate::dynamics::{isotope_gamma, DensityState, SpinSystem};
use crate::seqlang::{compile, EventKind, SequenceAst};
use crate::spinops::{kron, Axis, ComplexMatrix};

/// `J_max·P/(P + P_sat)`: indirect coupling produced by pumping at power `P`.
pub fn mediated_coupling(power: f64, j_max: f64, p_sat: f64) -> f64 {
    j_max * saturation(power, p_sat)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellConfig {
    /// Position along the gradient, metres.
    pub z: f64,
    pub power: f64,
    pub helicity: Helicity,
    #[serde(default = "one")]
    pub density_rho: f64,
}

fn one() -> f64 {
    1.0
}

/// JSON lattice description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeConfig {
    pub cells: Vec<CellConfig>,
    /// Static field, tesla.
    pub b0: f64,
    /// Field gradient along z, tesla/metre.
    #[serde(default)]
    pub gradient: f64,
    /// Nuclear gyromagnetic ratio; ³¹P when absent.
    #[serde(default = "phosphorus_gamma")]
    pub gamma: f64,
    /// Hyperfine constant A, Hz.
    pub coupling_a_hz: f64,
    #[serde(default = "default_p_sat")]
    pub p_sat: f64,
    pub j_max_hz: f64,
    /// Nuclear linewidth, Hz.
    pub linewidth_hz: f64,
    /// Selective-pulse bandwidth used for conditional flips, Hz.
    pub bandwidth_hz: f64,
    #[serde(default = "default_band_gap")]
    pub band_gap_ev: f64,
}

fn phosphorus_gamma() -> f64 {
    isotope_gamma("31P").expect("31P in table")
}

fn default_p_sat() -> f64 {
    DEFAULT_P_SAT
}

fn default_band_gap() -> f64 {
    DEFAULT_BAND_GAP_EV
}

impl LatticeConfig {
    /// `n` cells 1 mm apart, all pumped σ⁻ at 4·P_sat, with a gradient that
    /// separates neighbours by ten linewidths.
    pub fn default_chain(n: usize) -> Self {
        let gamma = phosphorus_gamma();
        let linewidth_hz = 20.0;
        let spacing = 1e-3;
        LatticeConfig {
            cells: (0..n)
                .map(|i| CellConfig {
                    z: i as f64 * spacing,
                    power: 4.0,
                    helicity: Helicity::SigmaMinus,
                    density_rho: 1.0,
                })
                .collect(),
            b0: 2.0,
            gradient: 10.0 * linewidth_hz * 2.0 * PI / (gamma * spacing),
            gamma,
            coupling_a_hz: 1e5,
            p_sat: DEFAULT_P_SAT,
            j_max_hz: 1000.0,
            linewidth_hz,
            bandwidth_hz: 1e4,
            band_gap_ev: DEFAULT_BAND_GAP_EV,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, OpnmrError> {
        serde_json::from_str(text).map_err(|e| OpnmrError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, OpnmrError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| OpnmrError::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("lattice config serializes")
    }
}

/// One line of a lattice trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRow {
    pub step: usize,
    pub cell: usize,
    pub operation: String,
}

/// Write rows as CSV with columns `step,cell,operation`.
pub fn write_trace_csv<W: Write>(rows: &[TraceRow], mut w: W) -> std::io::Result<()> {
    writeln!(w, "step,cell,operation")?;
    for r in rows {
        writeln!(w, "{},{},{}", r.step, r.cell, r.operation)?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransportReport {
    pub hops: usize,
    /// Neighbour CNOTs applied, three per hop.
    pub conditional_flips: usize,
    /// Coupling evolution time spent, seconds.
    pub elapsed: f64,
    /// Fidelity of the destination qubit with the source qubit.
    pub fidelity: f64,
    pub trace: Vec<TraceRow>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Lattice {
    cells: Vec<Cell>,
    config: LatticeConfig,
}

impl Lattice {
    pub fn new(config: LatticeConfig) -> Result<Self, OpnmrError> {
        if config.cells.is_empty() {
            return Err(OpnmrError::Config("lattice has no cells".into()));
        }
        if !(config.p_sat > 0.0) || !(config.j_max_hz >= 0.0) || !(config.linewidth_hz >= 0.0) {
            return Err(OpnmrError::Config(
                "p_sat must be positive; j_max and linewidth non-negative".into(),
            ));
        }
        if !(config.bandwidth_hz > 0.0) {
            return Err(OpnmrError::Bandwidth(config.bandwidth_hz));
        }
        if config.cells.windows(2).any(|w| !(w[0].z < w[1].z)) {
            return Err(OpnmrError::Config(
                "cells must be ordered by increasing position".into(),
            ));
        }
        let mut cells = Vec::with_capacity(config.cells.len());
        for (i, cc) in config.cells.iter().enumerate() {
            if !(cc.density_rho >= 0.0) {
                return Err(OpnmrError::Config(format!("cell {i}: negative electron density")));
            }
            let pump_cfg = PumpConfig {
                helicity: cc.helicity,
                power: cc.power,
                band_gap: config.band_gap_ev,
            };
            cells.push(pump(&Cell::new(i, cc.z, cc.density_rho), pump_cfg, config.p_sat)?);
        }
        Ok(Lattice { cells, config })
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn config(&self) -> &LatticeConfig {
        &self.config
    }

    pub fn cell(&self, index: usize) -> Result<&Cell, OpnmrError> {
        self.cells.get(index).ok_or(OpnmrError::CellOutOfRange {
            index,
            len: self.cells.len(),
        })
    }

    /// Mediated coupling between cells `i` and `i + 1`, Hz. The weaker of
    /// the two pump powers sets the density of mediating electrons.
    pub fn bond_coupling(&self, i: usize) -> Result<f64, OpnmrError> {
        let a = self.cell(i)?;
        let b = self.cell(i + 1)?;
        let power = a.pump.power.min(b.pump.power);
        Ok(mediated_coupling(power, self.config.j_max_hz, self.config.p_sat))
    }

    /// Overhauser model for a cell, including the gradient field at its position.
    pub fn overhauser_model(&self, index: usize) -> Result<OverhauserModel, OpnmrError> {
        let c = self.cell(index)?;
        Ok(OverhauserModel {
            coupling_a: self.config.coupling_a_hz,
            density_rho: c.density_rho,
            gamma: self.config.gamma,
            b0: self.config.b0 + self.config.gradient * c.z,
        })
    }

    /// `γ(B₀ + G·z)/2π` for a cell, Hz.
    pub fn gradient_address(&self, index: usize) -> Result<f64, OpnmrError> {
        let c = self.cell(index)?;
        Ok(self.config.gamma * (self.config.b0 + self.config.gradient * c.z) / (2.0 * PI))
    }

    /// Two cells can be driven separately when their frequencies differ by
    /// more than the linewidth.
    pub fn addressable(&self, i: usize, j: usize) -> Result<bool, OpnmrError> {
        let gap = (self.gradient_address(i)? - self.gradient_address(j)?).abs();
        Ok(gap > self.config.linewidth_hz)
    }

    pub fn pump_cell(&self, index: usize, config: PumpConfig) -> Result<Lattice, OpnmrError> {
        let mut out = self.clone();
        out.cells[index] = pump(self.cell(index)?, config, self.config.p_sat)?;
        Ok(out)
    }

    /// Selective π pulse at the resonance the cell would have with its
    /// electrons pumped up at the current power (fully up when unpumped).
    /// It flips σ⁻-pumped cells and leaves σ⁺-pumped ones alone.
    pub fn flip(&self, index: usize) -> Result<(Lattice, bool), OpnmrError> {
        let model = self.overhauser_model(index)?;
        let sz = self.cell(index)?.electron_sz.value().abs();
        let up = if sz > 0.0 {
            ElectronSz::new(sz)?
        } else {
            ElectronSz::UP
        };
        let freq = resonance_frequency(&model, up);
        let (cell, flipped) = conditional_flip(self.cell(index)?, &model, freq, self.config.bandwidth_hz)?;
        let mut out = self.clone();
        out.cells[index] = cell;
        Ok((out, flipped))
    }

    pub fn read(&self, index: usize) -> Result<RamanReadout, OpnmrError> {
        Ok(raman_readout(self.cell(index)?, &self.overhauser_model(index)?))
    }

    /// The first unpumped cell between `from` and `to` inclusive, if the
    /// path has a zero-coupling bond.
    fn blocking_cell(&self, from: usize, to: usize) -> Result<Option<usize>, OpnmrError> {
        let (lo, hi) = if from <= to { (from, to) } else { (to, from) };
        let path: Vec<usize> = if from <= to {
            (lo..hi).collect()
        } else {
            (lo..hi).rev().collect()
        };
        for i in path {
            if self.bond_coupling(i)? <= 0.0 {
                let (a, b) = (&self.cells[i], &self.cells[i + 1]);
                let near = if from <= to { (a, b) } else { (b, a) };
                let blocked = if near.0.pump.power <= 0.0 {
                    near.0.index
                } else {
                    near.1.index
                };
                return Ok(Some(blocked));
            }
        }
        Ok(None)
    }

    /// Move the qubit in `from` to `to` by nearest-neighbour SWAPs, each built
    /// from three neighbour CNOTs driven by the bond's mediated coupling.
    pub fn ca_transport(&self, from: usize, to: usize) -> Result<(Lattice, TransportReport), OpnmrError> {
        self.cell(from)?;
        self.cell(to)?;
        if let Some(cell) = self.blocking_cell(from, to)? {
            return Err(OpnmrError::TransportBlocked { cell });
        }
        let source = self.cells[from].qubit.clone();
        let mut out = self.clone();
        let mut trace = Vec::new();
        let mut elapsed = 0.0;
        let mut flips = 0;
        let mut pos = from;
        while pos != to {
            let next = if to > pos { pos + 1 } else { pos - 1 };
            let bond = pos.min(next);
            let j = out.bond_coupling(bond)?;
            let (cnot_fw, t_fw) = neighbour_cnot(j, true)?;
            let (cnot_bw, t_bw) = neighbour_cnot(j, false)?;
            // Joint state with `pos` as the left factor.
            let (left, right) = (pos, next);
            let mut joint = kron(out.cells[left].qubit.rho(), out.cells[right].qubit.rho());
            for (k, (u, t, control, target)) in [
                (&cnot_fw, t_fw, left, right),
                (&cnot_bw, t_bw, right, left),
                (&cnot_fw, t_fw, left, right),
            ]
            .into_iter()
            .enumerate()
            {
                joint = &(u * &joint) * &u.dagger();
                elapsed += t;
                flips += 1;
                trace.push(TraceRow {
                    step: trace.len() + 1,
                    cell: control,
                    operation: format!("cnot {control}->{target} ({} of 3)", k + 1),
                });
            }
            let (rho_left, rho_right) = partial_traces(&joint);
            out.cells[left].qubit = DensityState::from_matrix(rho_left, &[0.0])?;
            out.cells[right].qubit = DensityState::from_matrix(rho_right, &[0.0])?;
            pos = next;
        }
        let fidelity = qubit_fidelity(source.rho(), out.cells[to].qubit.rho());
        let hops = from.abs_diff(to);
        Ok((
            out,
            TransportReport {
                hops,
                conditional_flips: flips,
                elapsed,
                fidelity,
                trace,
            },
        ))
    }
}

/// CNOT between two neighbouring ³¹P qubits coupled by `j_hz`, from the
/// five-event construction with a refocused delay of 1/(2J). With
/// `left_controls` false the right qubit is the control. Returns the unitary
/// and the delay time.
pub fn neighbour_cnot(j_hz: f64, left_controls: bool) -> Result<(ComplexMatrix, f64), OpnmrError> {
    let sys = SpinSystem::new(1.0)
        .with_spin("L", "31P")
        .and_then(|s| s.with_spin("R", "31P"))
        .and_then(|s| s.with_coupling("L", "R", j_hz))?;
    let (control, target) = if left_controls { ("L", "R") } else { ("R", "L") };
    let tau = 1.0 / (2.0 * j_hz);
    let pulse = |axis, degrees: f64| EventKind::Pulse {
        target: target.into(),
        axis,
        degrees,
    };
    let seq = SequenceAst::new(
        "neighbour_cnot",
        vec![
            pulse(Axis::Y, 90.0),
            EventKind::Delay {
                seconds: tau,
                refocus: true,
            },
            EventKind::ZComposite {
                target: target.into(),
                degrees: -90.0,
            },
            EventKind::ZComposite {
                target: control.into(),
                degrees: -90.0,
            },
            pulse(Axis::Y, -90.0),
        ],
    );
    let c = compile(&seq, &sys)?;
    Ok((c.matrix, c.total_duration))
}

/// Reduced states of the two factors of a 4×4 density matrix.
pub fn partial_traces(joint: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    assert_eq!(joint.dim(), 4);
    let mut left = ComplexMatrix::zeros(2);
    let mut right = ComplexMatrix::zeros(2);
    for a in 0..2 {
        for b in 0..2 {
            for k in 0..2 {
                left[(a, b)] += joint[(2 * a + k, 2 * b + k)];
                right[(a, b)] += joint[(2 * k + a, 2 * k + b)];
            }
        }
    }
    (left, right)
}

/// Uhlmann fidelity of two qubit density matrices,
/// `tr(ρσ) + 2·sqrt(det ρ · det σ)`.
pub fn qubit_fidelity(rho: &ComplexMatrix, sigma: &ComplexMatrix) -> f64 {
    let det = |m: &ComplexMatrix| (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]).re.max(0.0);
    let overlap = (rho * sigma).trace().re;
    (overlap + 2.0 * (det(rho) * det(sigma)).sqrt()).min(1.0)
}
