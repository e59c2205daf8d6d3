// Copyright 2026 The symdepol Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex linear algebra used throughout the crate.

mod eigen;
mod expm;
mod matrix;
mod wire;

pub use eigen::{eig_hermitian, solve, svd_nullspace, HermitianEigen};
pub use expm::expm;
pub use matrix::{
    dagger, frobenius_distance, kron, matmul, pauli_x, pauli_y, pauli_z, trace, ComplexMatrix,
    C64, I, ONE, ZERO,
};

/// Default relative tolerance for kernel extraction.
pub const NULLSPACE_TOL: f64 = 1e-10;

/// Operator (spectral) norm of a Hermitian matrix.
pub fn hermitian_operator_norm(a: &ComplexMatrix) -> crate::Result<f64> {
    Ok(eig_hermitian(a)?.max_abs_eigenvalue())
}

/// Trace distance ½‖a − b‖₁ between Hermitian matrices.
pub fn trace_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> crate::Result<f64> {
    let diff = a.try_sub(b)?;
    let e = eig_hermitian(&diff.hermitian_part())?;
    Ok(0.5 * e.eigenvalues.iter().map(|w| w.abs()).sum::<f64>())
}
