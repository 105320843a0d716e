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

//! Sequence syntax tree and its canonical text form.

use std::f64::consts::PI;
use std::fmt;

use crate::dynamics::SpinSystem;
use crate::spinops::Axis;

/// 1-based source position.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// One step of a sequence. Angles are kept in degrees, as written.
#[derive(Clone, Debug, PartialEq)]
pub enum EventKind {
    /// Hard pulse on one spin; `z` compiles to a native diagonal rotation.
    Pulse {
        target: String,
        axis: Axis,
        degrees: f64,
    },
    /// z rotation written in composite form; see `expand_composite_z`.
    ZComposite { target: String, degrees: f64 },
    /// Free precession for `seconds`; `refocus` zeroes the offset terms.
    Delay { seconds: f64, refocus: bool },
    /// Direct coupling evolution `exp(i·2θ·I_z S_z)` with θ in degrees.
    Couple { a: String, b: String, degrees: f64 },
}

impl EventKind {
    /// Rotation angle in radians for angle-carrying events.
    pub fn radians(&self) -> Option<f64> {
        match self {
            EventKind::Pulse { degrees, .. }
            | EventKind::ZComposite { degrees, .. }
            | EventKind::Couple { degrees, .. } => Some(degrees * PI / 180.0),
            EventKind::Delay { .. } => None,
        }
    }
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // `{}` on f64 prints the shortest text that parses back to the same value.
        match self {
            EventKind::Pulse {
                target,
                axis,
                degrees,
            } => write!(f, "pulse {target} {axis} {degrees}"),
            EventKind::ZComposite { target, degrees } => write!(f, "zpulse {target} {degrees}"),
            EventKind::Delay { seconds, refocus } => {
                write!(f, "delay {seconds}")?;
                if *refocus {
                    f.write_str(" refocus")?;
                }
                Ok(())
            }
            EventKind::Couple { a, b, degrees } => write!(f, "couple {a} {b} {degrees}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Event {
    pub kind: EventKind,
    pub span: Span,
}

impl Event {
    pub fn new(kind: EventKind) -> Self {
        Event {
            kind,
            span: Span::default(),
        }
    }
}

/// Ordered events; the first event is applied first.
#[derive(Clone, Debug)]
pub struct SequenceAst {
    pub name: String,
    pub events: Vec<Event>,
}

/// Equality ignores source positions.
impl PartialEq for SequenceAst {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.events.len() == other.events.len()
            && self
                .events
                .iter()
                .zip(&other.events)
                .all(|(a, b)| a.kind == b.kind)
    }
}

impl SequenceAst {
    pub fn new(name: &str, kinds: Vec<EventKind>) -> Self {
        SequenceAst {
            name: name.to_string(),
            events: kinds.into_iter().map(Event::new).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn kinds(&self) -> impl Iterator<Item = &EventKind> {
        self.events.iter().map(|e| &e.kind)
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &SequenceAst) -> SequenceAst {
        let mut events = self.events.clone();
        events.extend(other.events.iter().cloned());
        SequenceAst {
            name: format!("{}_{}", self.name, other.name),
            events,
        }
    }
}

impl fmt::Display for SequenceAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "sequence {} {{", self.name)?;
        for e in &self.events {
            writeln!(f, "  {}", e.kind)?;
        }
        writeln!(f, "}}")
    }
}

/// A parsed file: one spin system and the sequences that act on it.
#[derive(Clone, Debug, PartialEq)]
pub struct Program {
    pub system: SpinSystem,
    pub sequences: Vec<SequenceAst>,
}

impl Program {
    pub fn sequence(&self, name: &str) -> Option<&SequenceAst> {
        self.sequences.iter().find(|s| s.name == name)
    }
}

/// Render a system block in the input syntax.
pub fn format_system(sys: &SpinSystem) -> String {
    let mut out = String::from("system {\n");
    for s in sys.spins() {
        out.push_str(&format!("  spin {} \"{}\"\n", s.label, s.isotope));
    }
    for s in sys.spins() {
        if s.offset != 0.0 {
            out.push_str(&format!("  offset {} {} Hz\n", s.label, s.offset / (2.0 * PI)));
        }
    }
    for c in sys.couplings() {
        out.push_str(&format!("  J {} {} {} Hz\n", c.a, c.b, c.j_hz));
    }
    out.push_str("}\n");
    out
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_system(&self.system))?;
        for s in &self.sequences {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}
