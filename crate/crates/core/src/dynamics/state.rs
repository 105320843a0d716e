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

//! Ensemble density matrices with per-spin polarization bookkeeping.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::{DynamicsError, SpinSystem};
use crate::spinops::{spin_operator, Axis, ComplexMatrix, SpinIndex, Tolerances};

/// Density matrix of a spin ensemble.
///
/// `polarization[k]` is `⟨2 I_z⟩` of spin `k` (1 for a fully spin-up
/// ensemble) and always agrees with `rho`. `equilibrium[k]` is the thermal
/// value the spin relaxes back to.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityState {
    rho: ComplexMatrix,
    polarization: Vec<f64>,
    equilibrium: Vec<f64>,
}

fn iz(k: usize, n: usize) -> ComplexMatrix {
    spin_operator(Axis::Z, SpinIndex::new(k, n).expect("k < n"))
}

fn nspins_of(dim: usize) -> usize {
    dim.trailing_zeros() as usize
}

impl DensityState {
    /// Product state `I/d + Σ p_k·2I_z^k/d`; requires `Σ|p_k| ≤ 1` so the
    /// matrix stays positive semidefinite.
    pub fn from_polarizations(polarization: &[f64], equilibrium: &[f64]) -> Result<Self, DynamicsError> {
        let n = polarization.len();
        assert_eq!(n, equilibrium.len(), "one equilibrium value per spin");
        let total: f64 = polarization.iter().map(|p| p.abs()).sum();
        if total > 1.0 + 1e-12 || polarization.iter().any(|p| !p.is_finite()) {
            return Err(DynamicsError::PolarizationExceedsUnity(total));
        }
        let dim = 1usize << n;
        let inv_d = 1.0 / dim as f64;
        let mut rho = ComplexMatrix::identity(dim).scale(C64::new(inv_d, 0.0));
        for (k, &p) in polarization.iter().enumerate() {
            rho = &rho + &iz(k, n).scale(C64::new(2.0 * p * inv_d, 0.0));
        }
        Ok(DensityState {
            rho,
            polarization: polarization.to_vec(),
            equilibrium: equilibrium.to_vec(),
        })
    }

    /// Arbitrary density matrix; checked for unit trace and Hermiticity.
    pub fn from_matrix(rho: ComplexMatrix, equilibrium: &[f64]) -> Result<Self, DynamicsError> {
        let tol = Tolerances::default().construction;
        let tr = rho.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > tol {
            return Err(DynamicsError::InvalidState(format!("trace {tr}")));
        }
        if rho.hermitian_deviation() > tol {
            return Err(DynamicsError::InvalidState("not Hermitian".into()));
        }
        let n = nspins_of(rho.dim());
        assert_eq!(n, equilibrium.len(), "one equilibrium value per spin");
        let mut state = DensityState {
            rho,
            polarization: vec![0.0; n],
            equilibrium: equilibrium.to_vec(),
        };
        state.refresh_polarization();
        Ok(state)
    }

    pub fn rho(&self) -> &ComplexMatrix {
        &self.rho
    }

    pub fn polarization(&self) -> &[f64] {
        &self.polarization
    }

    pub fn equilibrium(&self) -> &[f64] {
        &self.equilibrium
    }

    pub fn nspins(&self) -> usize {
        self.polarization.len()
    }

    /// `⟨op⟩ = tr(ρ·op)`.
    pub fn expectation(&self, op: &ComplexMatrix) -> C64 {
        (&self.rho * op).trace()
    }

    /// Population of computational basis state `index`.
    pub fn population(&self, index: usize) -> f64 {
        self.rho[(index, index)].re
    }

    fn refresh_polarization(&mut self) {
        let n = self.nspins();
        for k in 0..n {
            self.polarization[k] = 2.0 * self.expectation(&iz(k, n)).re;
        }
    }
}

/// First-order high-temperature equilibrium, ε_k = γ_k ħ B₀ / (k_B T).
///
/// Each spin's polarization is ε_k/2, the leading term of tanh(ε_k/2).
pub fn thermal_state(sys: &SpinSystem, temperature: f64) -> Result<DensityState, DynamicsError> {
    if !(temperature > 0.0) {
        return Err(DynamicsError::NonPositiveTemperature(temperature));
    }
    let p: Vec<f64> = sys
        .spins()
        .iter()
        .map(|s| sys.boltzmann_factor(&s.label, temperature).map(|e| e / 2.0))
        .collect::<Result<_, _>>()?;
    DensityState::from_polarizations(&p, &p)
}

/// Thermal state with one spin's polarization scaled by `sign·enhancement`.
///
/// The equilibrium values stay thermal, so T1 decay returns the spin there.
pub fn hyperpolarized_state(
    sys: &SpinSystem,
    temperature: f64,
    label: &str,
    enhancement: f64,
    sign: f64,
) -> Result<DensityState, DynamicsError> {
    if !(enhancement > 0.0) {
        return Err(DynamicsError::NonPositiveEnhancement(enhancement));
    }
    let k = sys.index_of(label)?;
    let thermal = thermal_state(sys, temperature)?;
    let mut p = thermal.polarization.clone();
    p[k] *= sign.signum() * enhancement;
    DensityState::from_polarizations(&p, &thermal.equilibrium)
}

/// `ρ → UρU†`.
pub fn evolve(state: &DensityState, u: &ComplexMatrix) -> Result<DensityState, DynamicsError> {
    if u.dim() != state.rho.dim() {
        return Err(DynamicsError::SpinOps(
            crate::spinops::SpinOpsError::DimensionMismatch {
                left: state.rho.dim(),
                right: u.dim(),
            },
        ));
    }
    let deviation = u.unitarity_deviation();
    if deviation > Tolerances::default().equivalence {
        return Err(DynamicsError::SpinOps(crate::spinops::SpinOpsError::NonUnitary {
            deviation,
        }));
    }
    let rho = &(u * &state.rho) * &u.dagger();
    let mut out = DensityState {
        rho,
        polarization: state.polarization.clone(),
        equilibrium: state.equilibrium.clone(),
    };
    out.refresh_polarization();
    Ok(out)
}

/// Longitudinal relaxation time and Lorentzian linewidth per spin.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelaxationParams {
    /// Seconds.
    pub t1: Vec<f64>,
    /// Full width at half maximum, Hz.
    pub linewidth: Vec<f64>,
}

impl RelaxationParams {
    /// Five hundred hours, in seconds.
    pub const DEFAULT_T1: f64 = 500.0 * 3600.0;
    pub const DEFAULT_LINEWIDTH_HZ: f64 = 20.0;

    pub fn uniform(nspins: usize, t1: f64, linewidth: f64) -> Result<Self, DynamicsError> {
        let p = RelaxationParams {
            t1: vec![t1; nspins],
            linewidth: vec![linewidth; nspins],
        };
        p.validate(nspins)?;
        Ok(p)
    }

    pub fn default_for(nspins: usize) -> Self {
        Self::uniform(nspins, Self::DEFAULT_T1, Self::DEFAULT_LINEWIDTH_HZ).expect("defaults valid")
    }

    pub fn validate(&self, nspins: usize) -> Result<(), DynamicsError> {
        if self.t1.len() != nspins || self.linewidth.len() != nspins {
            return Err(DynamicsError::InvalidRelaxation(format!(
                "expected {nspins} entries per parameter"
            )));
        }
        if let Some(t1) = self.t1.iter().find(|t| !(**t > 0.0)) {
            return Err(DynamicsError::InvalidRelaxation(format!(
                "T1 must be positive, got {t1}"
            )));
        }
        if let Some(lw) = self.linewidth.iter().find(|w| !(**w >= 0.0)) {
            return Err(DynamicsError::InvalidRelaxation(format!(
                "linewidth must be non-negative, got {lw}"
            )));
        }
        Ok(())
    }
}

/// Single-exponential return of each spin's longitudinal polarization to
/// equilibrium: `p(t) = p_eq + (p₀ − p_eq)·e^{−t/T1}`. Coherences and
/// multi-spin terms are left untouched.
pub fn t1_decay(
    state: &DensityState,
    params: &RelaxationParams,
    elapsed: f64,
) -> Result<DensityState, DynamicsError> {
    if !(elapsed >= 0.0) {
        return Err(DynamicsError::NegativeDuration(elapsed));
    }
    let n = state.nspins();
    params.validate(n)?;
    let inv_d = 1.0 / state.rho.dim() as f64;
    let mut rho = state.rho.clone();
    for k in 0..n {
        let p0 = state.polarization[k];
        let peq = state.equilibrium[k];
        let p = peq + (p0 - peq) * (-elapsed / params.t1[k]).exp();
        rho = &rho + &iz(k, n).scale(C64::new(2.0 * (p - p0) * inv_d, 0.0));
    }
    let mut out = DensityState {
        rho,
        polarization: state.polarization.clone(),
        equilibrium: state.equilibrium.clone(),
    };
    out.refresh_polarization();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spinops::cnot;

    fn sys() -> SpinSystem {
        SpinSystem::xe_h_default()
    }

    #[test]
    fn thermal_limits() {
        let hot = thermal_state(&sys(), 1e300).unwrap();
        assert!(hot
            .rho()
            .approx_eq(&ComplexMatrix::identity(4).scale(C64::new(0.25, 0.0)), 1e-15));
        let cold = thermal_state(&sys(), 4.2).unwrap();
        assert!((cold.rho().trace().re - 1.0).abs() < 1e-12);
        let p = cold.polarization();
        assert!((p[1] / p[0] - 2.6752e8 / -7.452e7).abs() < 1e-9);
        assert!(matches!(
            thermal_state(&sys(), 0.0),
            Err(DynamicsError::NonPositiveTemperature(_))
        ));
    }

    #[test]
    fn hyperpolarization() {
        let thermal = thermal_state(&sys(), 20.0).unwrap();
        let hp = hyperpolarized_state(&sys(), 20.0, "B", 1e5, 1.0).unwrap();
        let ratio = hp.polarization()[0] / thermal.polarization()[0];
        assert!((ratio - 1e5).abs() / 1e5 < 1e-9);
        assert!((hp.polarization()[1] - thermal.polarization()[1]).abs() < 1e-20);

        let neg = hyperpolarized_state(&sys(), 20.0, "B", 1e5, -1.0).unwrap();
        assert!((neg.polarization()[0] + hp.polarization()[0]).abs() < 1e-15);

        let same = hyperpolarized_state(&sys(), 20.0, "B", 1.0, 1.0).unwrap();
        assert!(same.rho().approx_eq(thermal.rho(), 1e-18));

        assert!(matches!(
            hyperpolarized_state(&sys(), 20.0, "Z", 10.0, 1.0),
            Err(DynamicsError::UnknownSpin(_))
        ));
        assert!(matches!(
            hyperpolarized_state(&sys(), 20.0, "B", 0.0, 1.0),
            Err(DynamicsError::NonPositiveEnhancement(_))
        ));
        assert!(matches!(
            hyperpolarized_state(&sys(), 20.0, "B", 1e9, 1.0),
            Err(DynamicsError::PolarizationExceedsUnity(_))
        ));
    }

    #[test]
    fn evolve_cnot_permutes_basis() {
        let mut rho = ComplexMatrix::zeros(4);
        rho[(2, 2)] = C64::new(1.0, 0.0);
        let s = DensityState::from_matrix(rho, &[0.0, 0.0]).unwrap();
        let out = evolve(&s, &cnot()).unwrap();
        assert!((out.population(3) - 1.0).abs() < 1e-15);
        assert_eq!(out.polarization(), &[-1.0, -1.0]);

        let same = evolve(&s, &ComplexMatrix::identity(4)).unwrap();
        assert_eq!(same.rho(), s.rho());

        let bad = ComplexMatrix::identity(4).scale(C64::new(1.1, 0.0));
        assert!(evolve(&s, &bad).is_err());
    }

    #[test]
    fn t1_law() {
        let params = RelaxationParams::uniform(2, 10.0, 0.0).unwrap();
        let s = DensityState::from_polarizations(&[0.4, -0.2], &[0.0, 0.0]).unwrap();
        let same = t1_decay(&s, &params, 0.0).unwrap();
        assert!(same.rho().approx_eq(s.rho(), 1e-16));
        let one = t1_decay(&s, &params, 10.0).unwrap();
        let e = (-1.0f64).exp();
        assert!((one.polarization()[0] - 0.4 * e).abs() < 1e-15);
        assert!((one.polarization()[1] + 0.2 * e).abs() < 1e-15);
        assert!(t1_decay(&s, &params, -1.0).is_err());
    }

    #[test]
    fn five_hundred_hour_retention() {
        let params = RelaxationParams::default_for(2);
        let s = DensityState::from_polarizations(&[0.5, 0.0], &[0.0, 0.0]).unwrap();
        let after = t1_decay(&s, &params, 3600.0).unwrap();
        let retention = after.polarization()[0] / 0.5;
        assert!((retention - (-1.0f64 / 500.0).exp()).abs() < 1e-14);
        assert!((retention - 0.998).abs() < 5e-4);
    }

    #[test]
    fn relaxation_validation() {
        assert!(RelaxationParams::uniform(2, 0.0, 1.0).is_err());
        assert!(RelaxationParams::uniform(2, 1.0, -1.0).is_err());
        let p = RelaxationParams::default_for(3);
        assert!(p.validate(2).is_err());
    }
}
