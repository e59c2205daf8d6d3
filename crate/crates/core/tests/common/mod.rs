// Copyright 2026 The symdepol Authors
// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symdepol::{ComplexMatrix, C64};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller
    let u: f64 = rng.gen_range(f64::EPSILON..1.0);
    let v: f64 = rng.gen();
    (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos()
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| C64::new(gaussian(rng), gaussian(rng)))
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    random_matrix(rng, n, n).hermitian_part()
}

/// Full-rank mixed state G G† / tr(G G†) with G Ginibre.
pub fn random_state(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let g = random_matrix(rng, n, n);
    let rho = &g * &g.dagger();
    let tr = rho.trace().unwrap().re;
    rho.scale_real(1.0 / tr).hermitian_part()
}

pub fn random_pure(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let psi: Vec<C64> = (0..n).map(|_| C64::new(gaussian(rng), gaussian(rng))).collect();
    symdepol::state::pure_state(&psi).unwrap()
}

/// Uniform in the closed unit ball.
pub fn random_bloch(rng: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let s = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        if s.iter().map(|x: &f64| x * x).sum::<f64>() <= 1.0 {
            return s;
        }
    }
}

/// exp(a) by a plain Taylor series; only for modest ‖a‖.
pub fn taylor_expm(a: &ComplexMatrix, terms: usize) -> ComplexMatrix {
    let n = a.rows();
    let mut sum = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..=terms {
        term = (&term * a).scale_real(1.0 / k as f64);
        sum += &term;
    }
    sum
}

pub fn max_offdiag(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut m: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                m = m.max(a[(i, j)].norm());
            }
        }
    }
    m
}

/// A ⊗ B ⊗ C ... for states.
pub fn kron_all(parts: &[&ComplexMatrix]) -> ComplexMatrix {
    let mut out = parts[0].clone();
    for p in &parts[1..] {
        out = out.kron(p);
    }
    out
}
