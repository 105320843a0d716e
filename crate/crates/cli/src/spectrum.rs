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

//! `spectrum` subcommand.

use std::f64::consts::FRAC_PI_2;
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};
use nmrlogic::dynamics::{
    evolve, fid, hyperpolarized_state, rotation_propagator, thermal_state, RelaxationParams, SpinSystem,
};
use nmrlogic::seqlang::parse;
use nmrlogic::spinops::Axis;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{Cli, Failure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StateKind {
    Thermal,
    Hyperpolarized,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// Spin system as JSON, or a .pseq file whose system block is used.
    /// The Xe-H system (J = 100 Hz, 0.1 T) when omitted.
    pub system: Option<PathBuf>,
    /// Spin to excite and detect; the last declared spin when omitted.
    #[arg(long)]
    pub observe: Option<String>,
    #[arg(long, value_enum, default_value_t = StateKind::Thermal)]
    pub state: StateKind,
    /// Spin carrying the enhancement; the observed spin when omitted.
    #[arg(long)]
    pub hyperpolarize: Option<String>,
    #[arg(long, default_value_t = 1e5)]
    pub enhancement: f64,
    /// Kelvin.
    #[arg(long, default_value_t = 300.0)]
    pub temperature: f64,
    #[arg(long, default_value_t = 2048)]
    pub points: usize,
    /// Sampling interval, seconds.
    #[arg(long, default_value_t = 1.0 / 1024.0)]
    pub dwell: f64,
    /// Lorentzian linewidth, Hz.
    #[arg(long, default_value_t = RelaxationParams::DEFAULT_LINEWIDTH_HZ)]
    pub linewidth: f64,
    /// RMS receiver noise relative to the largest FID sample; seeded by --seed.
    #[arg(long, default_value_t = 0.0)]
    pub noise: f64,
    /// Report peaks above this fraction of the tallest.
    #[arg(long, default_value_t = 0.2)]
    pub threshold: f64,
}

fn load_system(path: Option<&Path>) -> anyhow::Result<SpinSystem> {
    let Some(path) = path else {
        return Ok(SpinSystem::xe_h_default());
    };
    if path.extension().is_some_and(|e| e == "pseq") {
        let text = std::fs::read_to_string(path).with_context(|| path.display().to_string())?;
        let program = parse(&text).map_err(|e| anyhow::anyhow!("{}:{e}", path.display()))?;
        Ok(program.system)
    } else {
        Ok(SpinSystem::load(path)?)
    }
}

fn simulate(cli: &Cli, args: &SpectrumArgs) -> anyhow::Result<()> {
    let sys = load_system(args.system.as_deref())?;
    let observe = match &args.observe {
        Some(l) => l.clone(),
        None => sys
            .spins()
            .last()
            .expect("validated system has spins")
            .label
            .clone(),
    };
    sys.index_of(&observe)?;
    if args.noise.is_nan() || args.noise < 0.0 {
        bail!("--noise must be non-negative");
    }
    if !(0.0..=1.0).contains(&args.threshold) {
        bail!("--threshold must lie in [0, 1]");
    }
    let state = match args.state {
        StateKind::Thermal => thermal_state(&sys, args.temperature)?,
        StateKind::Hyperpolarized => {
            let label = args.hyperpolarize.as_deref().unwrap_or(&observe);
            hyperpolarized_state(&sys, args.temperature, label, args.enhancement, 1.0)?
        }
    };
    let read = rotation_propagator(&sys, &observe, Axis::Y, FRAC_PI_2)?;
    let state = evolve(&state, &read)?;
    let params = RelaxationParams::uniform(sys.nspins(), RelaxationParams::DEFAULT_T1, args.linewidth)?;
    let mut signal = fid(&state, &sys, &params, &observe, args.points, args.dwell)?;
    if args.noise > 0.0 {
        let scale = signal.samples.iter().map(|s| s.norm()).fold(0.0, f64::max);
        let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
        signal.add_noise(args.noise * scale, &mut rng);
    }
    let spectrum = signal.spectrum();

    let out = cli.out.join("spectrum.csv");
    let file = File::create(&out).with_context(|| out.display().to_string())?;
    spectrum
        .write_csv(BufWriter::new(file))
        .with_context(|| out.display().to_string())?;

    println!(
        "observed {observe}, {} points, resolution {} Hz, state {:?}",
        args.points,
        spectrum.resolution_hz(),
        args.state
    );
    let peaks = spectrum.peaks(args.threshold);
    println!("{} peaks", peaks.len());
    let mut by_freq = peaks.clone();
    by_freq.sort_by(|a, b| a.frequency_hz.total_cmp(&b.frequency_hz));
    for p in &by_freq {
        println!("  {:>12.4} Hz  amplitude {:.6e}", p.frequency_hz, p.amplitude);
    }
    if by_freq.len() == 2 {
        println!(
            "splitting {:.4} Hz",
            by_freq[1].frequency_hz - by_freq[0].frequency_hz
        );
    }
    println!("wrote {}", out.display());
    Ok(())
}

pub fn run(cli: &Cli, args: &SpectrumArgs) -> Result<ExitCode, Failure> {
    simulate(cli, args)?;
    Ok(ExitCode::SUCCESS)
}
