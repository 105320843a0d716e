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

//! Optically pumped NMR: electron-controlled nuclear gates in
//! semiconductor cells, Xe/H cross-polarization and a pumped cell lattice.

mod crosspol;
mod lattice;
mod overhauser;
mod pump;

use thiserror::Error;

use crate::dynamics::DynamicsError;
use crate::seqlang::SeqError;

pub use crosspol::{cp_gate, cross_polarize, GateAction};
pub use lattice::{
    mediated_coupling, neighbour_cnot, partial_traces, qubit_fidelity, write_trace_csv, CellConfig, Lattice,
    LatticeConfig, TraceRow, TransportReport,
};
pub use overhauser::{
    conditional_flip, conditional_truth_table, overhauser_shift, raman_readout, resonance_frequency,
    OverhauserModel, RamanReadout, SpinReading, TruthRow,
};
pub use pump::{
    pump, saturation, Cell, ElectronSz, Helicity, PumpConfig, DEFAULT_BAND_GAP_EV, DEFAULT_P_SAT,
};

/// Default lattice description: five cells along a gradient.
pub const DEFAULT_LATTICE: &str = include_str!("../../fixtures/lattice_default.json");

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OpnmrError {
    #[error("cross-polarization efficiency must lie in [0, 1], got {0}")]
    Efficiency(f64),
    #[error("pump power must be finite and non-negative, got {0}")]
    NegativePower(f64),
    #[error("electron polarization must satisfy |<S_z>| <= 1/2, got {0}")]
    ElectronPolarization(f64),
    #[error("pulse bandwidth must be positive, got {0}")]
    Bandwidth(f64),
    #[error("cell {index} out of range for a lattice of {len}")]
    CellOutOfRange { index: usize, len: usize },
    #[error("transport blocked at cell {cell}")]
    TransportBlocked { cell: usize },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Sequence(#[from] SeqError),
}
