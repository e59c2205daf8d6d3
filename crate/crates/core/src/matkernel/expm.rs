// Copyright 2026 The symdepol Authors
// SPDX-License-Identifier: Apache-2.0

//! Matrix exponential by scaling and squaring with Padé approximants
//! (Higham 2005). Degrees 3, 5, 7, 9 are used for small 1-norms, 13 otherwise.

use super::eigen::solve;
use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [
    17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0,
];
const B9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const B13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

const THETA3: f64 = 1.495585217958292e-2;
const THETA5: f64 = 2.53939833006323e-1;
const THETA7: f64 = 9.504178996162932e-1;
const THETA9: f64 = 2.097847961257068e0;
const THETA13: f64 = 5.371920351148152e0;

/// Squarings beyond this would mean ‖a‖₁ ≳ 5·2⁶⁰; treat as overflow.
const MAX_SQUARINGS: i32 = 60;

pub fn expm(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.ensure_square("expm argument")?;
    let n = a.rows();
    let norm = a.one_norm();
    if !norm.is_finite() {
        return Err(Error::Numerical("expm argument has non-finite norm".into()));
    }
    if norm == 0.0 {
        return Ok(ComplexMatrix::identity(n));
    }

    for (theta, coeffs) in [
        (THETA3, &B3[..]),
        (THETA5, &B5[..]),
        (THETA7, &B7[..]),
        (THETA9, &B9[..]),
    ] {
        if norm <= theta {
            return pade_low(a, coeffs);
        }
    }

    let s = (norm / THETA13).log2().ceil().max(0.0) as i32;
    if s > MAX_SQUARINGS {
        return Err(Error::Numerical(format!(
            "expm argument norm {norm:e} too large"
        )));
    }
    let scaled = a.scale_real(0.5f64.powi(s));
    let mut x = pade13(&scaled)?;
    for _ in 0..s {
        x = &x * &x;
    }
    if !x.is_finite() {
        return Err(Error::Numerical(format!(
            "expm overflow after {s} squarings (norm {norm:e})"
        )));
    }
    Ok(x)
}

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Padé [m/m] for m ∈ {3, 5, 7, 9}; `b` has length m + 1.
fn pade_low(a: &ComplexMatrix, b: &[f64]) -> Result<ComplexMatrix> {
    let n = a.rows();
    let a2 = a * a;
    let mut powers = vec![ComplexMatrix::identity(n), a2.clone()];
    while powers.len() < b.len() / 2 {
        let next = powers.last().unwrap() * &a2;
        powers.push(next);
    }
    let mut u = ComplexMatrix::zeros(n, n);
    let mut v = ComplexMatrix::zeros(n, n);
    for (k, p) in powers.iter().enumerate() {
        v.axpy(real(b[2 * k]), p);
        u.axpy(real(b[2 * k + 1]), p);
    }
    let u = a * &u;
    finish(&u, &v)
}

fn pade13(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.rows();
    let id = ComplexMatrix::identity(n);
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;

    let mut inner_u = a6.scale_real(B13[13]);
    inner_u.axpy(real(B13[11]), &a4);
    inner_u.axpy(real(B13[9]), &a2);
    let mut u = &a6 * &inner_u;
    u.axpy(real(B13[7]), &a6);
    u.axpy(real(B13[5]), &a4);
    u.axpy(real(B13[3]), &a2);
    u.axpy(real(B13[1]), &id);
    let u = a * &u;

    let mut inner_v = a6.scale_real(B13[12]);
    inner_v.axpy(real(B13[10]), &a4);
    inner_v.axpy(real(B13[8]), &a2);
    let mut v = &a6 * &inner_v;
    v.axpy(real(B13[6]), &a6);
    v.axpy(real(B13[4]), &a4);
    v.axpy(real(B13[2]), &a2);
    v.axpy(real(B13[0]), &id);
    finish(&u, &v)
}

/// r = (V − U)⁻¹(V + U)
fn finish(u: &ComplexMatrix, v: &ComplexMatrix) -> Result<ComplexMatrix> {
    solve(&(v - u), &(v + u))
}
