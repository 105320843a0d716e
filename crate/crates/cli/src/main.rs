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

//! `nmrlogic` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure or blocked transport,
//! 2 unreadable input, parse error or invalid configuration.

mod lattice;
mod spectrum;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "nmrlogic", version, about = "Pulse-level NMR quantum logic simulator")]
pub struct Cli {
    /// Verification tolerance: largest accepted 1 - fidelity, and the
    /// entrywise tolerance for diagonal-phase matching.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Seed for any randomness (receiver noise).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Directory for machine-readable output files.
    #[arg(long, global = true, env = "NMRLOGIC_OUT", default_value = ".")]
    pub out: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compile sequences and check them against a target gate.
    Verify(verify::VerifyArgs),
    /// Compile sequences and dump their unitaries.
    Compile(verify::CompileArgs),
    /// Simulate an FID and write its spectrum.
    Spectrum(spectrum::SpectrumArgs),
    /// Run a pump/flip/transport/read script on a cell lattice.
    Lattice(lattice::LatticeArgs),
}

/// Error carrying the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    pub fn failed(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::usage(format!("{e:#}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = std::fs::create_dir_all(&cli.out)
        .map_err(|e| Failure::usage(format!("{}: {e}", cli.out.display())))
        .and_then(|_| match &cli.command {
            Command::Verify(args) => verify::run(&cli, args),
            Command::Compile(args) => verify::run_compile(&cli, args),
            Command::Spectrum(args) => spectrum::run(&cli, args),
            Command::Lattice(args) => lattice::run(&cli, args),
        });
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
