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

//! Free-induction decay and its discrete Fourier transform.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64 as C64;
use rand::Rng;
use rustfft::FftPlanner;

use super::convention::FROZEN;
use super::propagators::delay_propagator;
use super::state::{DensityState, RelaxationParams};
use super::{DynamicsError, SpinSystem};
use crate::spinops::{spin_operator, Axis, ComplexMatrix};

/// Sampled complex FID.
#[derive(Clone, Debug, PartialEq)]
pub struct Fid {
    pub samples: Vec<C64>,
    /// Sampling interval, seconds.
    pub dwell: f64,
}

/// Sampled spectrum with its frequency axis, lowest frequency first.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub frequency_hz: Vec<f64>,
    pub values: Vec<C64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Peak {
    pub index: usize,
    /// Parabolically interpolated position, Hz.
    pub frequency_hz: f64,
    /// Absorption height at the peak bin.
    pub amplitude: f64,
}

fn check_sampling(n_points: usize, dwell: f64) -> Result<(), DynamicsError> {
    if n_points < 2 || !n_points.is_power_of_two() {
        return Err(DynamicsError::InvalidSampling(format!(
            "point count {n_points} is not a power of two >= 2"
        )));
    }
    if !(dwell > 0.0) || !dwell.is_finite() {
        return Err(DynamicsError::InvalidSampling(format!(
            "dwell {dwell} must be positive"
        )));
    }
    Ok(())
}

/// Receiver operator for one spin.
///
/// Under the frozen rotation sign, free precession at offset Ω turns
/// `I_x − i·I_y` into `e^{+iΩt}`, so a positive offset lands at a positive
/// frequency.
pub fn receiver_operator(sys: &SpinSystem, observe: &str) -> Result<ComplexMatrix, DynamicsError> {
    let idx = sys.spin_index(observe)?;
    let ix = spin_operator(Axis::X, idx);
    let iy = spin_operator(Axis::Y, idx);
    Ok(&ix - &iy.scale(C64::new(0.0, FROZEN.z_sign.value())))
}

/// Simulate the FID of `observe` under free evolution with Lorentzian damping
/// `exp(−π·linewidth·t)`.
pub fn fid(
    state: &DensityState,
    sys: &SpinSystem,
    params: &RelaxationParams,
    observe: &str,
    n_points: usize,
    dwell: f64,
) -> Result<Fid, DynamicsError> {
    check_sampling(n_points, dwell)?;
    params.validate(sys.nspins())?;
    if state.rho().dim() != sys.dim() {
        return Err(DynamicsError::InvalidState(
            "state does not match the spin system".into(),
        ));
    }
    let k = sys.index_of(observe)?;
    let detect = receiver_operator(sys, observe)?;
    let step = delay_propagator(sys, dwell, false)?;
    let step_dag = step.dagger();
    let damping = (-PI * params.linewidth[k] * dwell).exp();

    // Evolve the detection operator backwards instead of ρ forwards:
    // tr(D·UρU†) = tr(U†DU·ρ).
    let mut op = detect;
    let mut envelope = 1.0;
    let mut samples = Vec::with_capacity(n_points);
    for _ in 0..n_points {
        samples.push(state.expectation(&op) * envelope);
        op = &(&step_dag * &op) * &step;
        envelope *= damping;
    }
    Ok(Fid { samples, dwell })
}

/// FID followed by its spectrum.
pub fn fid_and_spectrum(
    state: &DensityState,
    sys: &SpinSystem,
    params: &RelaxationParams,
    observe: &str,
    n_points: usize,
    dwell: f64,
) -> Result<Spectrum, DynamicsError> {
    Ok(fid(state, sys, params, observe, n_points, dwell)?.spectrum())
}

impl Fid {
    /// Add complex Gaussian receiver noise with per-component standard deviation `rms`.
    pub fn add_noise<R: Rng>(&mut self, rms: f64, rng: &mut R) {
        for s in &mut self.samples {
            // Box–Muller
            let u1: f64 = 1.0 - rng.random::<f64>();
            let u2: f64 = rng.random();
            let r = (-2.0 * u1.ln()).sqrt() * rms;
            *s += C64::new(r * (2.0 * PI * u2).cos(), r * (2.0 * PI * u2).sin());
        }
    }

    /// Forward DFT with the first point halved, reordered so frequencies ascend.
    pub fn spectrum(&self) -> Spectrum {
        let n = self.samples.len();
        let mut buf = self.samples.clone();
        if let Some(first) = buf.first_mut() {
            *first *= 0.5;
        }
        FftPlanner::new().plan_fft_forward(n).process(&mut buf);
        buf.rotate_right(n / 2);
        let df = 1.0 / (n as f64 * self.dwell);
        let frequency_hz = (0..n).map(|k| (k as f64 - (n / 2) as f64) * df).collect();
        Spectrum {
            frequency_hz,
            values: buf,
        }
    }
}

impl Spectrum {
    pub fn resolution_hz(&self) -> f64 {
        self.frequency_hz[1] - self.frequency_hz[0]
    }

    pub fn magnitudes(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm()).collect()
    }

    /// Real part after zero-order phasing. For in-phase multiplets this is
    /// the absorption spectrum, whose lines overlap far less than magnitude
    /// lines do.
    ///
    /// The reference phase is that of the spectrum sum (the first FID point);
    /// when that vanishes, as for antiphase signals, the tallest bin is used.
    pub fn absorption(&self) -> Vec<f64> {
        let total: C64 = self.values.iter().sum();
        let scale: f64 = self.values.iter().map(|v| v.norm()).sum();
        let reference = if total.norm() > 1e-6 * scale {
            total
        } else {
            self.values
                .iter()
                .max_by(|a, b| a.norm().total_cmp(&b.norm()))
                .copied()
                .unwrap_or_default()
        };
        if reference.norm() == 0.0 {
            return vec![0.0; self.values.len()];
        }
        let phase = (reference / reference.norm()).conj();
        self.values.iter().map(|v| (v * phase).re).collect()
    }

    /// Strictly local maxima of the absorption spectrum above
    /// `rel_threshold × max`, strongest first.
    pub fn peaks(&self, rel_threshold: f64) -> Vec<Peak> {
        let mag = self.absorption();
        let n = mag.len();
        let top = mag.iter().cloned().fold(0.0, f64::max);
        if top == 0.0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        for i in 1..n.saturating_sub(1) {
            if mag[i] > mag[i - 1] && mag[i] >= mag[i + 1] && mag[i] >= rel_threshold * top {
                let (a, b, c) = (mag[i - 1], mag[i], mag[i + 1]);
                let denom = a - 2.0 * b + c;
                let shift = if denom != 0.0 { 0.5 * (a - c) / denom } else { 0.0 };
                out.push(Peak {
                    index: i,
                    frequency_hz: self.frequency_hz[i] + shift * self.resolution_hz(),
                    amplitude: b,
                });
            }
        }
        out.sort_by(|p, q| q.amplitude.partial_cmp(&p.amplitude).expect("finite"));
        out
    }

    /// Full width at half maximum of the absorption line around bin `index`,
    /// after removing the peak's phase. Linear interpolation between bins.
    pub fn fwhm_at(&self, index: usize) -> f64 {
        let phase = self.values[index] / self.values[index].norm();
        let absorption: Vec<f64> = self.values.iter().map(|v| (v * phase.conj()).re).collect();
        let half = absorption[index] / 2.0;
        let df = self.resolution_hz();
        let mut lo = index;
        while lo > 0 && absorption[lo] > half {
            lo -= 1;
        }
        let mut hi = index;
        while hi + 1 < absorption.len() && absorption[hi] > half {
            hi += 1;
        }
        let cross = |inside: usize, outside: usize| {
            let (a, b) = (absorption[inside], absorption[outside]);
            let frac = if a != b { (a - half) / (a - b) } else { 0.0 };
            self.frequency_hz[inside] + frac * (self.frequency_hz[outside] - self.frequency_hz[inside])
        };
        let left = if lo < index {
            cross(lo + 1, lo)
        } else {
            self.frequency_hz[index] - df / 2.0
        };
        let right = if hi > index {
            cross(hi - 1, hi)
        } else {
            self.frequency_hz[index] + df / 2.0
        };
        right - left
    }

    /// CSV with columns `frequency_hz,real,imag,magnitude`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "frequency_hz,real,imag,magnitude")?;
        for (f, v) in self.frequency_hz.iter().zip(&self.values) {
            writeln!(w, "{},{},{},{}", f, v.re, v.im, v.norm())?;
        }
        Ok(())
    }
}
