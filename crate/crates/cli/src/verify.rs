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

//! `verify` and `compile` subcommands.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, ValueEnum};
use nmrlogic::parallel::{map, Execution};
use nmrlogic::seqlang::{
    compile, diagonal_phases, equivalent_global_phase_with, optimize_with_stats, parse, CompiledUnitary,
    SequenceAst,
};
use nmrlogic::spinops::{cnot, phase_fidelity, ComplexMatrix, MatrixDocument, Tolerances};

use crate::{Cli, Failure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Equal up to one overall phase.
    Global,
    /// Equal up to diagonal phase matrices on both sides.
    Diagonal,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Sequence files (.pseq).
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    /// `cnot`, `identity`, or a JSON matrix document with `re` and `im` rows.
    #[arg(long, default_value = "cnot")]
    pub target: String,
    /// Which equivalence decides the exit code.
    #[arg(long, value_enum, default_value_t = Mode::Global)]
    pub mode: Mode,
    /// Sequence to check in each file; the first one when omitted.
    #[arg(long)]
    pub sequence: Option<String>,
}

#[derive(Debug, Args)]
pub struct CompileArgs {
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    /// Sequence to compile in each file; all of them when omitted.
    #[arg(long)]
    pub sequence: Option<String>,
    /// Run the peephole optimizer first and report what it removed.
    #[arg(long)]
    pub optimize: bool,
}

enum Target {
    Cnot,
    Identity,
    Matrix(ComplexMatrix),
}

impl Target {
    fn parse(spec: &str) -> Result<Self, Failure> {
        match spec {
            "cnot" => Ok(Target::Cnot),
            "identity" => Ok(Target::Identity),
            path => {
                let text = std::fs::read_to_string(path).with_context(|| format!("target {path}"))?;
                let doc: MatrixDocument =
                    serde_json::from_str(&text).with_context(|| format!("target {path}"))?;
                let m = doc.to_matrix().with_context(|| format!("target {path}"))?;
                Ok(Target::Matrix(m))
            }
        }
    }

    fn matrix(&self, dim: usize) -> Result<ComplexMatrix, String> {
        let m = match self {
            Target::Cnot => cnot(),
            Target::Identity => ComplexMatrix::identity(dim),
            Target::Matrix(m) => m.clone(),
        };
        if m.dim() != dim {
            return Err(format!(
                "target is {0}x{0} but the sequence acts on dimension {dim}",
                m.dim()
            ));
        }
        Ok(m)
    }
}

/// Output and exit code for one file.
struct Report {
    text: String,
    code: u8,
}

fn load(path: &Path, name: Option<&str>) -> Result<Vec<(SequenceAst, CompiledUnitary)>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let program = parse(&text).map_err(|e| format!("{}:{e}", path.display()))?;
    let chosen: Vec<&SequenceAst> = match name {
        Some(n) => vec![program
            .sequence(n)
            .ok_or_else(|| format!("{}: no sequence named `{n}`", path.display()))?],
        None => program.sequences.iter().collect(),
    };
    if chosen.is_empty() {
        return Err(format!("{}: no sequences", path.display()));
    }
    chosen
        .into_iter()
        .map(|s| {
            let u = compile(s, &program.system).map_err(|e| format!("{}:{e}", path.display()))?;
            Ok((s.clone(), u))
        })
        .collect()
}

fn verify_one(path: &Path, args: &VerifyArgs, target: &Target, tol: f64) -> Report {
    let (seq, u) = match load(path, args.sequence.as_deref()) {
        Ok(mut v) => v.swap_remove(0),
        Err(text) => {
            return Report {
                text: format!("error: {text}\n"),
                code: 2,
            }
        }
    };
    let want = match target.matrix(u.matrix.dim()) {
        Ok(m) => m,
        Err(e) => {
            return Report {
                text: format!("error: {}: {e}\n", path.display()),
                code: 2,
            }
        }
    };
    let tols = Tolerances {
        fidelity: tol,
        ..Tolerances::default()
    };
    let fidelity = phase_fidelity(&u.matrix, &want);
    let global = equivalent_global_phase_with(&u.matrix, &want, &tols);
    let diagonal = diagonal_phases(&u.matrix, &want, tol);
    let (fidelity, global, diagonal) = match (fidelity, global, diagonal) {
        (Ok(f), Ok(g), Ok(d)) => (f, g, d.is_some()),
        _ => {
            return Report {
                text: format!("error: {}: compiled matrix is not unitary\n", path.display()),
                code: 2,
            }
        }
    };
    let pass = match args.mode {
        Mode::Global => global,
        Mode::Diagonal => diagonal,
    };
    let mut text = String::new();
    let _ = writeln!(text, "{} [{}]", path.display(), seq.name);
    let _ = writeln!(text, "{}", u.matrix);
    let _ = writeln!(text, "phase fidelity: {fidelity:.6}");
    let _ = writeln!(text, "equivalent up to global phase: {global}");
    let _ = writeln!(text, "equivalent up to diagonal phases: {diagonal}");
    let mode = match args.mode {
        Mode::Global => "global",
        Mode::Diagonal => "diagonal",
    };
    let _ = writeln!(text, "verdict ({mode}): {}", if pass { "PASS" } else { "FAIL" });
    Report {
        text,
        code: if pass { 0 } else { 1 },
    }
}

pub fn run(cli: &Cli, args: &VerifyArgs) -> Result<ExitCode, Failure> {
    if cli.tol.is_nan() || cli.tol <= 0.0 {
        return Err(Failure::usage(format!("--tol must be positive, got {}", cli.tol)));
    }
    let target = Target::parse(&args.target)?;
    // Files are independent; results come back in input order.
    let reports = map(&args.files, Execution::Parallel, |p| {
        verify_one(p, args, &target, cli.tol)
    });
    let mut code = 0;
    for (i, r) in reports.iter().enumerate() {
        if i > 0 {
            println!();
        }
        if r.code == 2 {
            eprint!("{}", r.text);
        } else {
            print!("{}", r.text);
        }
        code = code.max(r.code);
    }
    Ok(ExitCode::from(code))
}

pub fn run_compile(cli: &Cli, args: &CompileArgs) -> Result<ExitCode, Failure> {
    for path in &args.files {
        let mut compiled = load(path, args.sequence.as_deref()).map_err(Failure::usage)?;
        if args.optimize {
            let text = std::fs::read_to_string(path).with_context(|| path.display().to_string())?;
            let system = parse(&text).map_err(|e| Failure::usage(e.to_string()))?.system;
            for (seq, u) in &mut compiled {
                let (opt, stats) = optimize_with_stats(seq);
                println!(
                    "{} [{}]: optimized {} -> {} events ({} passes, {} cancelled, {} merged, {} dropped)",
                    path.display(),
                    seq.name,
                    seq.len(),
                    opt.len(),
                    stats.passes,
                    stats.cancelled,
                    stats.merged,
                    stats.dropped
                );
                *u = compile(&opt, &system).map_err(|e| Failure::usage(e.to_string()))?;
                *seq = opt;
            }
        }
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("sequence");
        for (seq, u) in &compiled {
            println!(
                "{} [{}]: {} events, {} s of delay",
                path.display(),
                seq.name,
                u.event_count,
                u.total_duration
            );
            println!("{}", u.matrix);
            let out = cli.out.join(format!("{stem}.{}.json", seq.name));
            let doc = serde_json::to_string_pretty(&MatrixDocument::from_matrix(&u.matrix))
                .context("serializing matrix")?;
            std::fs::write(&out, doc + "\n").with_context(|| out.display().to_string())?;
            println!("wrote {}", out.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}
