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

//! Rotating-frame dynamics of small weakly coupled spin systems.
//!
//! Pulses are ideal instantaneous rotations. Free precession, ensemble
//! states, longitudinal relaxation and spectral readout are built on the
//! dense operators of [`crate::spinops`].

pub mod convention;
mod propagators;
mod spectrum;
mod state;
mod system;

use thiserror::Error;

use crate::spinops::SpinOpsError;

pub use convention::{Convention, Sign, FROZEN};
pub use propagators::{
    coupling_propagator, delay_propagator, free_hamiltonian, hamiltonian, rotation_propagator,
    rotation_propagator_with, PulseSpec,
};
pub use spectrum::{fid, fid_and_spectrum, receiver_operator, Fid, Peak, Spectrum};
pub use state::{evolve, hyperpolarized_state, t1_decay, thermal_state, DensityState, RelaxationParams};
pub use system::{isotope_gamma, Coupling, Spin, SpinSystem, HBAR, ISOTOPES, K_B, MAX_SPINS};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error("unknown spin `{0}`")]
    UnknownSpin(String),
    #[error("no coupling declared between `{0}` and `{1}`")]
    UnknownPair(String, String),
    #[error("duplicate spin label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown isotope `{0}`")]
    UnknownIsotope(String),
    #[error("unsupported spin count {0} (1 to 3 spins)")]
    TooManySpins(usize),
    #[error("invalid coupling: {0}")]
    InvalidCoupling(String),
    #[error("rotation angle {0} is not finite")]
    InvalidAngle(f64),
    #[error("duration {0} must be a finite non-negative number of seconds")]
    NegativeDuration(f64),
    #[error("temperature {0} K must be positive")]
    NonPositiveTemperature(f64),
    #[error("enhancement {0} must be positive")]
    NonPositiveEnhancement(f64),
    #[error("total polarization {0} exceeds 1; the density matrix would not be positive")]
    PolarizationExceedsUnity(f64),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("invalid relaxation parameters: {0}")]
    InvalidRelaxation(String),
    #[error("invalid sampling: {0}")]
    InvalidSampling(String),
    #[error("spin system configuration: {0}")]
    Config(String),
    #[error(transparent)]
    SpinOps(#[from] SpinOpsError),
}
