// Copyright 2026 The symdepol Authors
// SPDX-License-Identifier: Apache-2.0

//! Cyclic Jacobi eigensolver for complex Hermitian matrices, the one-sided
//! (Hestenes) variant used for kernel extraction, and a dense LU solve.

use super::matrix::{ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;
const HERMITIAN_TOL: f64 = 1e-12;

/// Eigen-decomposition `a = V·diag(w)·V†`, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    /// Eigenvectors as columns, in the order of `eigenvalues`.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        self.eigenvectors.col(k)
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let w = ComplexMatrix::from_real_diag(&self.eigenvalues);
        &(v * &w) * &v.dagger()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_abs_eigenvalue(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |m, w| m.max(w.abs()))
    }

    /// `V·diag(f(w))·V†`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> C64) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let fw: Vec<C64> = self.eigenvalues.iter().map(|&w| f(w)).collect();
        &(v * &ComplexMatrix::from_diag(&fw)) * &v.dagger()
    }
}

/// Unitary 2×2 rotation acting on indices (p, q) that zeroes the (p, q) entry
/// of the Hermitian pencil `[[app, apq], [conj(apq), aqq]]`.
#[derive(Clone, Copy)]
struct Rotation {
    pp: C64,
    pq: C64,
    qp: C64,
    qq: C64,
}

impl Rotation {
    fn annihilating(app: f64, aqq: f64, apq: C64) -> Self {
        let r = apq.norm();
        let phase = apq / r;
        let theta = (aqq - app) / (2.0 * r);
        let t = if theta >= 0.0 {
            1.0 / (theta + (theta * theta + 1.0).sqrt())
        } else {
            -1.0 / (-theta + (theta * theta + 1.0).sqrt())
        };
        let c = 1.0 / (t * t + 1.0).sqrt();
        let s = t * c;
        // phase-removal diag(1, conj(phase)) followed by a real Jacobi rotation
        let conj_phase = phase.conj();
        Rotation {
            pp: C64::new(c, 0.0),
            pq: C64::new(s, 0.0),
            qp: conj_phase * (-s),
            qq: conj_phase * c,
        }
    }

    /// Columns p, q of `cols` ← (col_p, col_q)·J.
    fn apply_right(&self, col_p: &mut [C64], col_q: &mut [C64]) {
        for (x, y) in col_p.iter_mut().zip(col_q.iter_mut()) {
            let (a, b) = (*x, *y);
            *x = a * self.pp + b * self.qp;
            *y = a * self.pq + b * self.qq;
        }
    }
}

/// Column-major scratch copy; Jacobi updates touch whole columns.
fn columns_of(a: &ComplexMatrix) -> Vec<Vec<C64>> {
    (0..a.cols()).map(|j| a.col(j)).collect()
}

fn from_columns(cols: &[Vec<C64>]) -> ComplexMatrix {
    let rows = cols[0].len();
    ComplexMatrix::from_fn(rows, cols.len(), |i, j| cols[j][i])
}

fn pair_mut<T>(v: &mut [T], p: usize, q: usize) -> (&mut T, &mut T) {
    debug_assert!(p < q);
    let (lo, hi) = v.split_at_mut(q);
    (&mut lo[p], &mut hi[0])
}

pub fn eig_hermitian(a: &ComplexMatrix) -> Result<HermitianEigen> {
    a.ensure_square("eig_hermitian input")?;
    let defect = a.hermitian_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::Precondition(format!(
            "matrix is not Hermitian (relative defect {defect:e})"
        )));
    }
    let n = a.rows();
    let mut m = a.hermitian_part();
    let mut v = columns_of(&ComplexMatrix::identity(n));
    let scale = m.frobenius_norm();

    let off_norm = |m: &ComplexMatrix| {
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    acc += m[(i, j)].norm_sqr();
                }
            }
        }
        acc.sqrt()
    };

    let mut sweeps = 0;
    while scale > 0.0 && off_norm(&m) > 1e-15 * scale {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                residual: off_norm(&m),
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq.norm() <= 1e-300 || apq.norm() <= 1e-18 * scale {
                    continue;
                }
                let rot = Rotation::annihilating(m[(p, p)].re, m[(q, q)].re, apq);
                // m ← m·J
                for k in 0..n {
                    let (x, y) = (m[(k, p)], m[(k, q)]);
                    m[(k, p)] = x * rot.pp + y * rot.qp;
                    m[(k, q)] = x * rot.pq + y * rot.qq;
                }
                // m ← J†·m
                for k in 0..n {
                    let (x, y) = (m[(p, k)], m[(q, k)]);
                    m[(p, k)] = rot.pp.conj() * x + rot.qp.conj() * y;
                    m[(q, k)] = rot.pq.conj() * x + rot.qq.conj() * y;
                }
                m[(p, q)] = ZERO;
                m[(q, p)] = ZERO;
                m[(p, p)] = C64::new(m[(p, p)].re, 0.0);
                m[(q, q)] = C64::new(m[(q, q)].re, 0.0);
                let (vp, vq) = pair_mut(&mut v, p, q);
                rot.apply_right(vp, vq);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| m[(i, i)].re).collect();
    let sorted: Vec<Vec<C64>> = order.iter().map(|&i| v[i].clone()).collect();
    Ok(HermitianEigen {
        eigenvalues,
        eigenvectors: from_columns(&sorted),
    })
}

/// Orthonormal basis of `{v : ‖a·v‖ ≤ tol·‖a‖_F}` as n×1 column matrices.
///
/// One-sided Jacobi: columns of `a·V` are orthogonalized by plane rotations,
/// after which `‖a·v_k‖` is the norm of column k. Basis vectors come out in
/// ascending order of that norm.
pub fn svd_nullspace(a: &ComplexMatrix, tol: f64) -> Vec<ComplexMatrix> {
    let n = a.cols();
    let mut w = columns_of(a);
    let mut v = columns_of(&ComplexMatrix::identity(n));
    let scale = a.frobenius_norm();
    let threshold = tol * scale;

    let dot = |x: &[C64], y: &[C64]| -> C64 { x.iter().zip(y).map(|(a, b)| a.conj() * b).sum() };
    let norm2 = |x: &[C64]| -> f64 { x.iter().map(|z| z.norm_sqr()).sum() };

    if scale > 0.0 {
        for _ in 0..MAX_SWEEPS {
            let mut rotated = false;
            for p in 0..n {
                for q in p + 1..n {
                    let alpha = norm2(&w[p]);
                    let beta = norm2(&w[q]);
                    let gamma = dot(&w[p], &w[q]);
                    let g = gamma.norm();
                    if g <= 1e-300 || g <= 1e-15 * (alpha * beta).sqrt() {
                        continue;
                    }
                    rotated = true;
                    let rot = Rotation::annihilating(alpha, beta, gamma);
                    let (wp, wq) = pair_mut(&mut w, p, q);
                    rot.apply_right(wp, wq);
                    let (vp, vq) = pair_mut(&mut v, p, q);
                    rot.apply_right(vp, vq);
                }
            }
            if !rotated {
                break;
            }
        }
    }

    let mut kernel: Vec<(f64, usize)> = (0..n)
        .map(|k| (norm2(&w[k]).sqrt(), k))
        .filter(|&(s, _)| s <= threshold)
        .collect();
    kernel.sort_by(|a, b| a.0.total_cmp(&b.0));
    kernel
        .into_iter()
        .map(|(_, k)| ComplexMatrix::column(&v[k]))
        .collect()
}

/// Solves `a·x = b` by Gaussian elimination with partial pivoting.
pub fn solve(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.ensure_square("solve coefficient matrix")?;
    let n = a.rows();
    if b.rows() != n {
        return Err(Error::Shape(format!(
            "right-hand side has {} rows, expected {n}",
            b.rows()
        )));
    }
    let m = b.cols();
    let mut lu = a.clone();
    let mut x = b.clone();
    let scale = a.max_abs();
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&i, &j| lu[(i, k)].norm().total_cmp(&lu[(j, k)].norm()))
            .unwrap();
        if lu[(pivot, k)].norm() <= f64::EPSILON * scale * n as f64 || lu[(pivot, k)].norm() == 0.0 {
            return Err(Error::Numerical(format!("singular matrix at column {k}")));
        }
        if pivot != k {
            for j in 0..n {
                let t = lu[(k, j)];
                lu[(k, j)] = lu[(pivot, j)];
                lu[(pivot, j)] = t;
            }
            for j in 0..m {
                let t = x[(k, j)];
                x[(k, j)] = x[(pivot, j)];
                x[(pivot, j)] = t;
            }
        }
        let inv = lu[(k, k)].inv();
        for i in k + 1..n {
            let f = lu[(i, k)] * inv;
            if f == ZERO {
                continue;
            }
            for j in k..n {
                let t = lu[(k, j)];
                lu[(i, j)] -= f * t;
            }
            for j in 0..m {
                let t = x[(k, j)];
                x[(i, j)] -= f * t;
            }
        }
    }
    for k in (0..n).rev() {
        let inv = lu[(k, k)].inv();
        for j in 0..m {
            let mut acc = x[(k, j)];
            for l in k + 1..n {
                acc -= lu[(k, l)] * x[(l, j)];
            }
            x[(k, j)] = acc * inv;
        }
    }
    if !x.is_finite() {
        return Err(Error::Numerical("non-finite solution".into()));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matkernel::matrix::{pauli_x, pauli_y, pauli_z};

    fn lcg_matrix(n: usize, seed: u64) -> ComplexMatrix {
        let mut s = seed;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        ComplexMatrix::from_fn(n, n, |_, _| C64::new(next(), next()))
    }

    #[test]
    fn diagonal_input() {
        let e = eig_hermitian(&ComplexMatrix::from_real_diag(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn pauli_spectra() {
        for p in [pauli_x(), pauli_y(), pauli_z()] {
            let e = eig_hermitian(&p).unwrap();
            assert!((e.eigenvalues[0] + 1.0).abs() < 1e-14);
            assert!((e.eigenvalues[1] - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn random_hermitian_reconstruction() {
        for seed in 0..10 {
            let a = lcg_matrix(6, seed).hermitian_part();
            let e = eig_hermitian(&a).unwrap();
            let rel = e.reconstruct().frobenius_distance(&a).unwrap() / a.frobenius_norm();
            assert!(rel < 1e-10, "seed {seed}: {rel}");
            let v = &e.eigenvectors;
            let gram = &v.dagger() * v;
            assert!(gram.frobenius_distance(&ComplexMatrix::identity(6)).unwrap() < 1e-10);
            assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn degenerate_spectrum() {
        // rank-one projector in 4 dims: eigenvalues (0, 0, 0, 1)
        let psi = [C64::new(0.5, 0.0), C64::new(0.0, 0.5), C64::new(-0.5, 0.0), C64::new(0.5, 0.0)];
        let p = ComplexMatrix::outer(&psi);
        let e = eig_hermitian(&p).unwrap();
        for (w, want) in e.eigenvalues.iter().zip([0.0, 0.0, 0.0, 1.0]) {
            assert!((w - want).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(eig_hermitian(&a), Err(Error::Precondition(_))));
        assert!(matches!(eig_hermitian(&ComplexMatrix::zeros(2, 3)), Err(Error::Shape(_))));
    }

    #[test]
    fn zero_matrix_has_full_kernel() {
        let k = svd_nullspace(&ComplexMatrix::zeros(3, 3), 1e-10);
        assert_eq!(k.len(), 3);
    }

    #[test]
    fn diagonal_kernel() {
        let k = svd_nullspace(&ComplexMatrix::from_real_diag(&[1.0, 0.0]), 1e-10);
        assert_eq!(k.len(), 1);
        assert!((k[0][(1, 0)].norm() - 1.0).abs() < 1e-14);
        assert!(k[0][(0, 0)].norm() < 1e-14);
    }

    #[test]
    fn kernel_of_rank_deficient_product() {
        // 5x5 of rank 3: kernel of dimension 2, residuals at round-off level
        let b = ComplexMatrix::from_fn(5, 3, |i, j| lcg_matrix(5, 11)[(i, j)]);
        let c = ComplexMatrix::from_fn(3, 5, |i, j| lcg_matrix(5, 12)[(i, j)]);
        let a = &b * &c;
        let k = svd_nullspace(&a, 1e-10);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!((&a * v).frobenius_norm() < 1e-13 * a.frobenius_norm());
        }
        let g = k[0].dagger().matmul(&k[1]).unwrap();
        assert!(g[(0, 0)].norm() < 1e-13);
    }

    #[test]
    fn full_rank_has_no_kernel() {
        assert!(svd_nullspace(&lcg_matrix(4, 3), 1e-10).is_empty());
    }

    #[test]
    fn wide_matrix_kernel() {
        let a = ComplexMatrix::from_fn(2, 4, |i, j| lcg_matrix(4, 5)[(i, j)]);
        assert_eq!(svd_nullspace(&a, 1e-10).len(), 2);
    }

    #[test]
    fn solve_random_system() {
        let a = lcg_matrix(5, 21);
        let x = lcg_matrix(5, 22);
        let b = &a * &x;
        let got = solve(&a, &b).unwrap();
        assert!(got.frobenius_distance(&x).unwrap() < 1e-12);
    }

    #[test]
    fn solve_singular() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]]).unwrap();
        assert!(matches!(
            solve(&a, &ComplexMatrix::identity(2)),
            Err(Error::Numerical(_))
        ));
    }
}
