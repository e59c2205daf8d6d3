// Copyright 2026 The symdepol Authors
// SPDX-License-Identifier: Apache-2.0

//! Density-matrix checks and a few standard states.

use crate::error::{Error, Result};
use crate::matkernel::{eig_hermitian, ComplexMatrix, C64};

/// Tolerances for accepting a matrix as a density matrix.
#[derive(Clone, Copy, Debug)]
pub struct StateTolerance {
    /// Absolute Frobenius bound on ρ − ρ†.
    pub hermitian: f64,
    /// Absolute bound on |tr ρ − 1|.
    pub trace: f64,
    /// Smallest eigenvalue allowed (a small negative number).
    pub min_eigenvalue: f64,
}

impl Default for StateTolerance {
    fn default() -> Self {
        Self {
            hermitian: 1e-10,
            trace: 1e-10,
            min_eigenvalue: -1e-8,
        }
    }
}

/// Returns `Ok(())` if `rho` is a `dim`×`dim` density matrix within `tol`.
pub fn check_state(rho: &ComplexMatrix, dim: usize, tol: StateTolerance) -> Result<()> {
    if rho.rows() != dim || rho.cols() != dim {
        return Err(Error::Shape(format!(
            "state is {}x{}, expected {dim}x{dim}",
            rho.rows(),
            rho.cols()
        )));
    }
    let herm = rho.frobenius_distance(&rho.dagger())?;
    if herm > tol.hermitian {
        return Err(Error::InvalidState(format!("not Hermitian (defect {herm:e})")));
    }
    let tr = rho.trace()?;
    if (tr - C64::new(1.0, 0.0)).norm() > tol.trace {
        return Err(Error::InvalidState(format!("trace is {tr}, expected 1")));
    }
    let min = eig_hermitian(&rho.hermitian_part())?.min_eigenvalue();
    if min < tol.min_eigenvalue {
        return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
    }
    Ok(())
}

/// |k⟩⟨k| in dimension `dim`.
pub fn basis_state(dim: usize, k: usize) -> Result<ComplexMatrix> {
    if k >= dim {
        return Err(Error::Argument(format!("basis index {k} out of range for dim {dim}")));
    }
    Ok(ComplexMatrix::unit(dim, k, k))
}

/// |ψ⟩⟨ψ|/⟨ψ|ψ⟩.
pub fn pure_state(psi: &[C64]) -> Result<ComplexMatrix> {
    let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
    if psi.is_empty() || !(norm2 > 0.0) || !norm2.is_finite() {
        return Err(Error::Argument("state vector must be nonzero and finite".into()));
    }
    Ok(ComplexMatrix::outer(psi).scale_real(1.0 / norm2))
}

pub fn maximally_mixed(dim: usize) -> ComplexMatrix {
    ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64)
}

/// tr(ρ²).
pub fn purity(rho: &ComplexMatrix) -> f64 {
    rho.data().iter().map(|z| z.norm_sqr()).sum()
}
