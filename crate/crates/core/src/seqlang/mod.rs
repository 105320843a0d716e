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

//! The pulse-sequence language: parsing, compilation to unitaries,
//! rewrite passes and gate equivalence checks.

mod ast;
mod compile;
mod equivalence;
mod parser;
pub mod random;
mod rewrite;

use thiserror::Error;

use crate::dynamics::DynamicsError;
use crate::spinops::SpinOpsError;

pub use ast::{format_system, Event, EventKind, Program, SequenceAst, Span};
pub use compile::{compile, event_propagator, CompiledUnitary};
pub use equivalence::{
    diagonal_phases, equivalent_global_phase, equivalent_global_phase_with, equivalent_up_to_diagonal_phases,
    DiagonalPhases,
};
pub use parser::{parse, parse_sequences, DEFAULT_B0};
pub use rewrite::{expand_composite_z, optimize, optimize_with_stats, OptimizeStats};

/// Shipped sequence files.
pub mod fixtures {
    /// Five-operator CNOT, equal to √(−i)·CNOT.
    pub const CNOT_V1: &str = include_str!("../../fixtures/cnot_v1.pseq");
    /// Three-operator CNOT, equal to CNOT up to diagonal phases.
    pub const CNOT_V2: &str = include_str!("../../fixtures/cnot_v2.pseq");
    /// Displayed matrix of the three-operator construction, as a matrix document.
    pub const CNOT_V2_EXPECTED: &str = include_str!("../../fixtures/cnot_v2_expected.json");
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeqError {
    #[error("{span}: syntax error: {message}")]
    Syntax { span: Span, message: String },
    #[error("{span}: unknown spin `{name}`")]
    UnknownSpin { name: String, span: Span },
    #[error("{span}: missing coupling: {detail}")]
    MissingCoupling { span: Span, detail: String },
    #[error("{span}: {source}")]
    System { span: Span, source: DynamicsError },
    #[error("compiled sequence is not unitary (deviation {0:e})")]
    NotUnitary(f64),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    SpinOps(#[from] SpinOpsError),
}

impl SeqError {
    /// Attach a source position to an error raised while compiling an event.
    pub(crate) fn located(self, span: Span) -> Self {
        match self {
            SeqError::Dynamics(DynamicsError::UnknownSpin(name)) => SeqError::UnknownSpin { name, span },
            SeqError::Dynamics(source) => SeqError::System { span, source },
            other => other,
        }
    }

    /// Source position, when the error has one.
    pub fn span(&self) -> Option<Span> {
        match self {
            SeqError::Syntax { span, .. }
            | SeqError::UnknownSpin { span, .. }
            | SeqError::MissingCoupling { span, .. }
            | SeqError::System { span, .. } => Some(*span),
            _ => None,
        }
    }
}
