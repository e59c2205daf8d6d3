// Copyright 2026 The symdepol Authors
// SPDX-License-Identifier: Apache-2.0

//! Symmetry-adapted dephasing, damping and depolarizing channels built from
//! Lie-algebra representation data, with exact Lindblad propagation.

// NaN-rejecting guards are written as `!(x > 0.0)`.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod liealg;
pub mod matkernel;
pub mod scenario;
pub mod state;
pub mod zoo;

pub use error::{Error, Result};
pub use matkernel::{ComplexMatrix, C64};
