// Copyright 2026 The symdepol Authors
// SPDX-License-Identifier: Apache-2.0

//! Kraus channels, Lindblad generators and their superoperator matrices.
//!
//! Superoperators act on column-stacked `vec(ρ)` and are assembled with
//! `vec(A·X·B) = (Bᵀ ⊗ A)·vec(X)`. Trace preservation of a Kraus set is the
//! condition `Σ_r K_r† K_r = 1`.

use log::warn;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matkernel::{eig_hermitian, ComplexMatrix, C64, I};
use crate::state::{check_state, StateTolerance};

/// Completeness tolerance enforced by [`KrausChannel::new`].
pub const COMPLETENESS_TOL: f64 = 1e-10;
/// Pass thresholds of [`verify_channel`].
pub const VERIFY_TP_TOL: f64 = 1e-8;
pub const VERIFY_CP_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "KrausDoc", into = "KrausDoc")]
pub struct KrausChannel {
    dim: usize,
    kraus_ops: Vec<ComplexMatrix>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct KrausDoc {
    dim: usize,
    kraus_ops: Vec<ComplexMatrix>,
}

impl TryFrom<KrausDoc> for KrausChannel {
    type Error = Error;

    fn try_from(doc: KrausDoc) -> Result<Self> {
        let ch = KrausChannel::from_operators(doc.kraus_ops)?;
        if ch.dim != doc.dim {
            return Err(Error::Parse(format!(
                "declared dim {} but Kraus operators are {}x{}",
                doc.dim, ch.dim, ch.dim
            )));
        }
        Ok(ch)
    }
}

impl From<KrausChannel> for KrausDoc {
    fn from(ch: KrausChannel) -> Self {
        KrausDoc {
            dim: ch.dim,
            kraus_ops: ch.kraus_ops,
        }
    }
}

impl KrausChannel {
    /// A trace-preserving Kraus set: shapes checked and `‖Σ K†K − 1‖ ≤ 1e-10`.
    pub fn new(kraus_ops: Vec<ComplexMatrix>) -> Result<Self> {
        let ch = Self::from_operators(kraus_ops)?;
        let resid = ch.completeness_residual()?;
        if resid > COMPLETENESS_TOL {
            return Err(Error::Precondition(format!(
                "Kraus operators are not complete (residual {resid:e})"
            )));
        }
        Ok(ch)
    }

    /// Any nonempty set of equal square operators. Used for approximate maps
    /// (first-order Kraus sets) and for sets under verification.
    pub fn from_operators(kraus_ops: Vec<ComplexMatrix>) -> Result<Self> {
        let dim = kraus_ops
            .first()
            .ok_or_else(|| Error::Argument("a channel needs at least one Kraus operator".into()))?
            .rows();
        for (r, k) in kraus_ops.iter().enumerate() {
            if k.rows() != dim || k.cols() != dim {
                return Err(Error::Shape(format!(
                    "Kraus operator {r} is {}x{}, expected {dim}x{dim}",
                    k.rows(),
                    k.cols()
                )));
            }
        }
        Ok(Self { dim, kraus_ops })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            kraus_ops: vec![ComplexMatrix::identity(dim)],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kraus_ops(&self) -> &[ComplexMatrix] {
        &self.kraus_ops
    }

    pub fn completeness(&self) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(self.dim, self.dim);
        for k in &self.kraus_ops {
            acc += &(&k.dagger() * k);
        }
        acc
    }

    /// Operator norm of `Σ K†K − 1`.
    pub fn completeness_residual(&self) -> Result<f64> {
        let d = &self.completeness() - &ComplexMatrix::identity(self.dim);
        Ok(eig_hermitian(&d.hermitian_part())?.max_abs_eigenvalue())
    }

    /// `Σ K ρ K†` on a validated density matrix.
    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        check_state(rho, self.dim, StateTolerance::default())?;
        Ok(self.map(rho))
    }

    /// `Σ K X K†` on any square matrix of matching size; no state checks.
    pub fn map(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for k in &self.kraus_ops {
            out += &(&(k * x) * &k.dagger());
        }
        out
    }

    /// Superoperator `Σ conj(K) ⊗ K` acting on `vec(ρ)`.
    pub fn superoperator(&self) -> Superoperator {
        let n = self.dim * self.dim;
        let mut s = ComplexMatrix::zeros(n, n);
        for k in &self.kraus_ops {
            s += &k.conj().kron(k);
        }
        Superoperator {
            dim: self.dim,
            matrix: s,
        }
    }
}

pub fn apply_kraus(ch: &KrausChannel, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    ch.apply(rho)
}

/// `ch2 ∘ ch1`, Kraus set `{K2_i K1_j}`.
pub fn compose(ch1: &KrausChannel, ch2: &KrausChannel) -> Result<KrausChannel> {
    if ch1.dim != ch2.dim {
        return Err(Error::Shape(format!(
            "cannot compose channels of dims {} and {}",
            ch1.dim, ch2.dim
        )));
    }
    let mut ops = Vec::with_capacity(ch1.kraus_ops.len() * ch2.kraus_ops.len());
    for k2 in &ch2.kraus_ops {
        for k1 in &ch1.kraus_ops {
            ops.push(k2 * k1);
        }
    }
    KrausChannel::from_operators(ops)
}

/// `C = Σ_ij E_ij ⊗ 𝓔(E_ij)`, an unnormalized Choi matrix on dim².
pub fn choi_matrix(ch: &KrausChannel) -> ComplexMatrix {
    let d = ch.dim;
    let mut c = ComplexMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            let e = ComplexMatrix::unit(d, i, j);
            c += &e.kron(&ch.map(&e));
        }
    }
    c
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelReport {
    pub tp_residual: f64,
    pub choi_min_eig: f64,
    pub pass: bool,
}

pub fn verify_channel(ch: &KrausChannel) -> Result<ChannelReport> {
    verify_channel_with(ch, VERIFY_TP_TOL, VERIFY_CP_TOL)
}

pub fn verify_channel_with(ch: &KrausChannel, tp_tol: f64, cp_tol: f64) -> Result<ChannelReport> {
    let tp_residual = ch.completeness_residual()?;
    let choi_min_eig = eig_hermitian(&choi_matrix(ch).hermitian_part())?.min_eigenvalue();
    Ok(ChannelReport {
        tp_residual,
        choi_min_eig,
        pass: tp_residual <= tp_tol && choi_min_eig >= -cp_tol,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Jump {
    pub rate: f64,
    pub op: ComplexMatrix,
}

impl Jump {
    pub fn new(rate: f64, op: ComplexMatrix) -> Self {
        Self { rate, op }
    }
}

/// `𝓛ρ = −i[H, ρ] + Σ_r a_r (L_r ρ L_r† − ½{L_r† L_r, ρ})`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GeneratorDoc", into = "GeneratorDoc")]
pub struct LindbladGenerator {
    dim: usize,
    hamiltonian: ComplexMatrix,
    jumps: Vec<Jump>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorDoc {
    dim: usize,
    #[serde(default)]
    hamiltonian: Option<ComplexMatrix>,
    #[serde(default)]
    jumps: Vec<Jump>,
}

impl TryFrom<GeneratorDoc> for LindbladGenerator {
    type Error = Error;

    fn try_from(doc: GeneratorDoc) -> Result<Self> {
        if doc.dim == 0 {
            return Err(Error::Parse("generator dim must be positive".into()));
        }
        let h = doc
            .hamiltonian
            .unwrap_or_else(|| ComplexMatrix::zeros(doc.dim, doc.dim));
        LindbladGenerator::new(doc.dim, h, doc.jumps)
    }
}

impl From<LindbladGenerator> for GeneratorDoc {
    fn from(g: LindbladGenerator) -> Self {
        GeneratorDoc {
            dim: g.dim,
            hamiltonian: Some(g.hamiltonian),
            jumps: g.jumps,
        }
    }
}

const HAMILTONIAN_TOL: f64 = 1e-12;

impl LindbladGenerator {
    pub fn new(dim: usize, hamiltonian: ComplexMatrix, jumps: Vec<Jump>) -> Result<Self> {
        if hamiltonian.rows() != dim || hamiltonian.cols() != dim {
            return Err(Error::Shape(format!(
                "Hamiltonian is {}x{}, expected {dim}x{dim}",
                hamiltonian.rows(),
                hamiltonian.cols()
            )));
        }
        if !hamiltonian.is_hermitian(HAMILTONIAN_TOL * hamiltonian.frobenius_norm().max(1.0)) {
            return Err(Error::Argument("Hamiltonian is not Hermitian".into()));
        }
        for (r, j) in jumps.iter().enumerate() {
            if !(j.rate >= 0.0) || !j.rate.is_finite() {
                return Err(Error::Argument(format!("jump {r} has invalid rate {}", j.rate)));
            }
            if j.op.rows() != dim || j.op.cols() != dim {
                return Err(Error::Shape(format!("jump operator {r} is not {dim}x{dim}")));
            }
        }
        Ok(Self {
            dim,
            hamiltonian,
            jumps,
        })
    }

    /// Purely dissipative generator.
    pub fn dissipative(dim: usize, jumps: Vec<Jump>) -> Result<Self> {
        Self::new(dim, ComplexMatrix::zeros(dim, dim), jumps)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hamiltonian(&self) -> &ComplexMatrix {
        &self.hamiltonian
    }

    pub fn jumps(&self) -> &[Jump] {
        &self.jumps
    }

    pub fn max_rate(&self) -> f64 {
        self.jumps.iter().map(|j| j.rate).fold(0.0, f64::max)
    }

    /// Smallest strictly positive rate, if any.
    pub fn min_positive_rate(&self) -> Option<f64> {
        self.jumps
            .iter()
            .map(|j| j.rate)
            .filter(|&r| r > 0.0)
            .min_by(f64::total_cmp)
    }

    /// Same generator with an additional Hamiltonian term.
    pub fn with_hamiltonian(&self, h: ComplexMatrix) -> Result<Self> {
        Self::new(self.dim, h, self.jumps.clone())
    }

    /// Applies 𝓛 to any dim×dim matrix.
    pub fn action(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        if rho.rows() != self.dim || rho.cols() != self.dim {
            return Err(Error::Shape(format!(
                "argument is {}x{}, generator acts on {}x{}",
                rho.rows(),
                rho.cols(),
                self.dim,
                self.dim
            )));
        }
        let mut out = self.hamiltonian.commutator(rho).scale(-I);
        for j in &self.jumps {
            if j.rate == 0.0 {
                continue;
            }
            let l = &j.op;
            let ld = l.dagger();
            // ½([L, ρL†] + [Lρ, L†])
            let rho_ld = rho * &ld;
            let l_rho = l * rho;
            let mut term = l.commutator(&rho_ld);
            term += &l_rho.commutator(&ld);
            out.axpy(C64::new(0.5 * j.rate, 0.0), &term);
        }
        Ok(out)
    }

    pub fn liouvillian(&self) -> Superoperator {
        let d = self.dim;
        let id = ComplexMatrix::identity(d);
        // −i(1 ⊗ H − Hᵀ ⊗ 1)
        let mut s = &id.kron(&self.hamiltonian) - &self.hamiltonian.transpose().kron(&id);
        s = s.scale(-I);
        for j in &self.jumps {
            if j.rate == 0.0 {
                continue;
            }
            let l = &j.op;
            let ldl = &l.dagger() * l;
            let mut term = l.conj().kron(l);
            term.axpy(C64::new(-0.5, 0.0), &id.kron(&ldl));
            term.axpy(C64::new(-0.5, 0.0), &ldl.transpose().kron(&id));
            s.axpy(C64::new(j.rate, 0.0), &term);
        }
        Superoperator { dim: d, matrix: s }
    }
}

pub fn lindblad_action(g: &LindbladGenerator, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    g.action(rho)
}

pub fn liouvillian_matrix(g: &LindbladGenerator) -> Superoperator {
    g.liouvillian()
}

/// d²×d² matrix acting on column-stacked operators.
#[derive(Clone, Debug, PartialEq)]
pub struct Superoperator {
    dim: usize,
    matrix: ComplexMatrix,
}

impl Superoperator {
    pub fn from_matrix(dim: usize, matrix: ComplexMatrix) -> Result<Self> {
        if matrix.rows() != dim * dim || matrix.cols() != dim * dim {
            return Err(Error::Shape(format!(
                "superoperator on dim {dim} must be {0}x{0}",
                dim * dim
            )));
        }
        Ok(Self { dim, matrix })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        if x.rows() != self.dim || x.cols() != self.dim {
            return Err(Error::Shape(format!("argument is not {0}x{0}", self.dim)));
        }
        let v = self.matrix.matmul(&x.vec())?;
        ComplexMatrix::unvec(v.data(), self.dim)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Superoperator) -> Result<Superoperator> {
        Ok(Superoperator {
            dim: self.dim,
            matrix: self.matrix.matmul(&first.matrix)?,
        })
    }

    /// ‖vec(1)† · S‖, zero for trace-preserving generators.
    pub fn trace_defect(&self) -> f64 {
        let id = ComplexMatrix::identity(self.dim).vec();
        (&id.dagger() * &self.matrix).frobenius_norm()
    }
}

/// Short-time Kraus set of a generator:
/// `K₀ = 1 − τ(iH + ½Σ a_r L_r†L_r)`, `K_r = √(τ a_r)·L_r`.
/// Complete only to O(τ²).
pub fn first_order_kraus(g: &LindbladGenerator, tau: f64) -> Result<KrausChannel> {
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(Error::Argument(format!("time step must be positive, got {tau}")));
    }
    let stiffness = tau * g.max_rate().max(g.hamiltonian.max_abs());
    if stiffness > 0.1 {
        warn!("first-order Kraus step is coarse: tau * max rate = {stiffness:.3}");
    }
    let d = g.dim;
    let mut effective = g.hamiltonian.scale(I);
    for j in &g.jumps {
        effective.axpy(C64::new(0.5 * j.rate, 0.0), &(&j.op.dagger() * &j.op));
    }
    let mut k0 = ComplexMatrix::identity(d);
    k0.axpy(C64::new(-tau, 0.0), &effective);
    let mut ops = vec![k0];
    for j in g.jumps.iter().filter(|j| j.rate > 0.0) {
        ops.push(j.op.scale_real((tau * j.rate).sqrt()));
    }
    KrausChannel::from_operators(ops)
}
