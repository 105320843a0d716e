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

//! Pulse-level simulation and compilation of two-spin NMR quantum logic.
//!
//! * [`spinops`]: dense complex matrices, spin operators, Hermitian exponentials.
//! * [`dynamics`]: rotating-frame propagators, ensemble states, relaxation, spectra.
//! * [`seqlang`]: the pulse-sequence language, its compiler and optimizer.
//! * [`opnmr`]: optical pumping, Overhauser-shift gates and the cell lattice.
//! * [`parallel`]: batch evaluation, parallel when the `parallel` feature is on.

// `!(x > 0.0)` style checks are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dynamics;
pub mod opnmr;
pub mod parallel;
pub mod seqlang;
pub mod spinops;
