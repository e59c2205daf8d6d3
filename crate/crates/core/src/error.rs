// Copyright 2026 The symdepol Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("inconsistent representation: {0}")]
    InconsistentRepresentation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("propagation failed at t = {time}: {reason}")]
    Propagation { time: f64, reason: String },

    #[error("asymptote not reached at horizon {horizon}: residual {residual:e}, drift {drift:e}")]
    Convergence {
        horizon: f64,
        residual: f64,
        drift: f64,
    },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short machine-readable tag used in CLI error documents and by the C ABI.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Shape(_) => "shape",
            Error::Precondition(_) => "precondition",
            Error::Argument(_) => "argument",
            Error::InvalidState(_) => "invalid_state",
            Error::InconsistentRepresentation(_) => "inconsistent_representation",
            Error::Parse(_) => "parse",
            Error::Numerical(_) => "numerical",
            Error::NoConvergence { .. } => "no_convergence",
            Error::Propagation { .. } => "propagation",
            Error::Convergence { .. } => "convergence",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }

    /// True for failures of the numerics rather than of the caller's input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Numerical(_)
                | Error::NoConvergence { .. }
                | Error::Propagation { .. }
                | Error::Convergence { .. }
        )
    }
}
