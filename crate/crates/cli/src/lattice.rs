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

//! `lattice` subcommand: run a script against a cell lattice.
//!
//! Script lines, cells numbered from 0, `#` starts a comment:
//!
//! ```text
//! pump <cell> <sigma+|sigma-> <power>
//! flip <cell>
//! transport <from> <to>
//! read <cell>
//! ```

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::Args;
use nmrlogic::opnmr::{write_trace_csv, Helicity, Lattice, LatticeConfig, OpnmrError, PumpConfig, TraceRow};

use crate::{Cli, Failure};

#[derive(Debug, Args)]
pub struct LatticeArgs {
    /// Lattice description (JSON).
    pub config: PathBuf,
    /// Command script; an empty script runs nothing.
    pub script: PathBuf,
}

#[derive(Clone, Debug, PartialEq)]
enum Step {
    Pump {
        cell: usize,
        helicity: Helicity,
        power: f64,
    },
    Flip {
        cell: usize,
    },
    Transport {
        from: usize,
        to: usize,
    },
    Read {
        cell: usize,
    },
}

fn parse_script(text: &str) -> anyhow::Result<Vec<(usize, Step)>> {
    let mut steps = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        let lineno = n + 1;
        let cell = |w: &str| {
            w.parse::<usize>()
                .map_err(|_| anyhow!("line {lineno}: bad cell `{w}`"))
        };
        let step = match words.as_slice() {
            ["pump", c, h, p] => Step::Pump {
                cell: cell(c)?,
                helicity: h.parse().map_err(|e| anyhow!("line {lineno}: {e}"))?,
                power: p.parse().map_err(|_| anyhow!("line {lineno}: bad power `{p}`"))?,
            },
            ["flip", c] => Step::Flip { cell: cell(c)? },
            ["transport", a, b] => Step::Transport {
                from: cell(a)?,
                to: cell(b)?,
            },
            ["read", c] => Step::Read { cell: cell(c)? },
            _ => bail!("line {lineno}: expected pump, flip, transport or read, got `{line}`"),
        };
        steps.push((lineno, step));
    }
    Ok(steps)
}

struct Run {
    lattice: Lattice,
    trace: Vec<TraceRow>,
    hops: usize,
}

impl Run {
    fn record(&mut self, cell: usize, operation: String) {
        let step = self.trace.len() + 1;
        self.trace.push(TraceRow {
            step,
            cell,
            operation,
        });
    }

    fn execute(&mut self, step: &Step) -> Result<String, OpnmrError> {
        match *step {
            Step::Pump {
                cell,
                helicity,
                power,
            } => {
                let cfg = PumpConfig {
                    band_gap: self.lattice.config().band_gap_ev,
                    ..PumpConfig::new(helicity, power)?
                };
                self.lattice = self.lattice.pump_cell(cell, cfg)?;
                let sz = self.lattice.cell(cell)?.electron_sz.value();
                self.record(cell, format!("pump {helicity} {power}"));
                Ok(format!("pump cell {cell} {helicity} at {power}: <S_z> = {sz:.6}"))
            }
            Step::Flip { cell } => {
                let (next, flipped) = self.lattice.flip(cell)?;
                self.lattice = next;
                let what = if flipped { "flip" } else { "flip off-resonant" };
                self.record(cell, what.to_string());
                Ok(format!(
                    "flip cell {cell}: {}",
                    if flipped {
                        "flipped"
                    } else {
                        "off resonance, unchanged"
                    }
                ))
            }
            Step::Transport { from, to } => {
                let (next, report) = self.lattice.ca_transport(from, to)?;
                self.lattice = next;
                self.hops += report.hops;
                for row in report.trace {
                    self.record(row.cell, row.operation);
                }
                Ok(format!(
                    "transport {from} -> {to}: {} hops, {} CNOTs, {:.6} s, fidelity {:.6}",
                    report.hops, report.conditional_flips, report.elapsed, report.fidelity
                ))
            }
            Step::Read { cell } => {
                let r = self.lattice.read(cell)?;
                let spin = format!("{:?}", r.spin).to_lowercase();
                self.record(cell, format!("read {spin}"));
                Ok(format!("read cell {cell}: {spin} (shift {:.6} Hz)", r.shift_hz))
            }
        }
    }
}

pub fn run(cli: &Cli, args: &LatticeArgs) -> Result<ExitCode, Failure> {
    let config = LatticeConfig::load(&args.config).map_err(|e| Failure::usage(e.to_string()))?;
    let lattice =
        Lattice::new(config).map_err(|e| Failure::usage(format!("{}: {e}", args.config.display())))?;
    let text = std::fs::read_to_string(&args.script).with_context(|| args.script.display().to_string())?;
    let steps = parse_script(&text).with_context(|| args.script.display().to_string())?;

    let mut run = Run {
        lattice,
        trace: Vec::new(),
        hops: 0,
    };
    let mut outcome = Ok(());
    for (lineno, step) in &steps {
        match run.execute(step) {
            Ok(line) => println!("{line}"),
            Err(OpnmrError::TransportBlocked { cell }) => {
                outcome = Err(Failure::failed(format!("transport blocked at cell {cell}")));
                break;
            }
            Err(e) => {
                outcome = Err(Failure::usage(format!(
                    "{}: line {lineno}: {e}",
                    args.script.display()
                )));
                break;
            }
        }
    }

    let out = cli.out.join("trace.csv");
    let file = File::create(&out).with_context(|| out.display().to_string())?;
    write_trace_csv(&run.trace, BufWriter::new(file)).with_context(|| out.display().to_string())?;
    println!(
        "commands: {}, total hops: {}, trace rows: {}",
        steps.len(),
        run.hops,
        run.trace.len()
    );
    println!("wrote {}", out.display());
    outcome.map(|_| ExitCode::SUCCESS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn script_syntax() {
        let steps =
            parse_script("# setup\npump 0 sigma- 4\n\nflip 1 # note\ntransport 0 4\nread 4\n").unwrap();
        assert_eq!(steps.len(), 4);
        assert_eq!(
            steps[0],
            (
                2,
                Step::Pump {
                    cell: 0,
                    helicity: Helicity::SigmaMinus,
                    power: 4.0
                }
            )
        );
        assert_eq!(steps[2], (5, Step::Transport { from: 0, to: 4 }));
        assert!(parse_script("").unwrap().is_empty());
        let err = parse_script("flip\n").unwrap_err().to_string();
        assert!(err.contains("line 1"), "{err}");
        assert!(parse_script("pump 0 sigma* 1").is_err());
        assert!(parse_script("read -1").is_err());
    }
}
