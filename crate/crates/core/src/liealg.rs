// Copyright 2026 The symdepol Authors
// SPDX-License-Identifier: Apache-2.0

//! Concrete Lie-algebra representations in a Cartan-Weyl basis.
//!
//! A [`Representation`] carries Cartan elements `h_i`, paired raising/lowering
//! operators `e_{+α}`, `e_{-α}` with `e_{+α}† = e_{-α}`, and the decomposition of
//! the carrier space into invariant blocks. Blocks are eigenspaces of the
//! quadratic Casimir
//!
//! ```text
//! C₂ = Σ_i h_i² + Σ_α (e_α e_{-α} + e_{-α} e_α) / 2
//! ```
//!
//! so irreducible copies sharing a Casimir eigenvalue are merged into one block.
//! Only su(2)-type data (spin irreps, direct sums, collective spin, Pauli words)
//! is constructed here; [`Representation::new`] accepts any generator set that
//! satisfies the Cartan-Weyl relations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matkernel::{eig_hermitian, pauli_x, pauli_y, pauli_z, ComplexMatrix, C64, ONE, ZERO};

const GENERATOR_TOL: f64 = 1e-12;
const BLOCK_TOL: f64 = 1e-10;
const CASIMIR_CLUSTER_TOL: f64 = 1e-8;
/// Collective spin is limited to 8 qubits (dimension 256).
pub const MAX_COLLECTIVE_QUBITS: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NamedMatrix {
    pub name: String,
    pub matrix: ComplexMatrix,
}

impl NamedMatrix {
    pub fn new(name: impl Into<String>, matrix: ComplexMatrix) -> Self {
        Self {
            name: name.into(),
            matrix,
        }
    }
}

/// One Casimir eigenspace.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantBlock {
    /// Spin label j, related to the Casimir eigenvalue by `casimir = j(j+1)`.
    pub label: f64,
    pub casimir: f64,
    pub dim: usize,
    /// Hermitian idempotent onto the block.
    pub projector: ComplexMatrix,
}

impl InvariantBlock {
    /// Formats the label as an integer or half-integer, e.g. `1` or `3/2`.
    pub fn label_string(&self) -> String {
        format_spin(self.label)
    }
}

pub fn format_spin(j: f64) -> String {
    let two_j = (2.0 * j).round() as i64;
    if (2.0 * j - two_j as f64).abs() > 1e-6 {
        format!("{j}")
    } else if two_j % 2 == 0 {
        format!("{}", two_j / 2)
    } else {
        format!("{two_j}/2")
    }
}

pub fn spin_from_casimir(c: f64) -> f64 {
    ((1.0 + 4.0 * c.max(0.0)).sqrt() - 1.0) / 2.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RepresentationDoc", into = "RepresentationDoc")]
pub struct Representation {
    dim: usize,
    cartan: Vec<NamedMatrix>,
    raising: Vec<NamedMatrix>,
    lowering: Vec<NamedMatrix>,
    blocks: Vec<InvariantBlock>,
}

/// Wire form; validated through [`Representation::new`] on the way in.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepresentationDoc {
    dim: usize,
    cartan: Vec<NamedMatrix>,
    raising: Vec<NamedMatrix>,
    lowering: Vec<NamedMatrix>,
    blocks: Vec<InvariantBlock>,
}

impl TryFrom<RepresentationDoc> for Representation {
    type Error = Error;

    fn try_from(doc: RepresentationDoc) -> Result<Self> {
        let rep = Representation::new(doc.cartan, doc.raising, doc.lowering, doc.blocks)?;
        if rep.dim != doc.dim {
            return Err(Error::Parse(format!(
                "declared dim {} but generators act on dim {}",
                doc.dim, rep.dim
            )));
        }
        Ok(rep)
    }
}

impl From<Representation> for RepresentationDoc {
    fn from(r: Representation) -> Self {
        RepresentationDoc {
            dim: r.dim,
            cartan: r.cartan,
            raising: r.raising,
            lowering: r.lowering,
            blocks: r.blocks,
        }
    }
}

impl Representation {
    /// Validates a full generator set together with its block structure.
    pub fn new(
        cartan: Vec<NamedMatrix>,
        raising: Vec<NamedMatrix>,
        lowering: Vec<NamedMatrix>,
        blocks: Vec<InvariantBlock>,
    ) -> Result<Self> {
        let rep = Self::unvalidated(cartan, raising, lowering, blocks)?;
        rep.validate()?;
        Ok(rep)
    }

    /// Builds the representation and computes its blocks from the Casimir.
    pub fn from_generators(
        cartan: Vec<NamedMatrix>,
        raising: Vec<NamedMatrix>,
        lowering: Vec<NamedMatrix>,
    ) -> Result<Self> {
        let blocks = {
            let c: Vec<_> = cartan.iter().map(|m| m.matrix.clone()).collect();
            let r: Vec<_> = raising.iter().map(|m| m.matrix.clone()).collect();
            let l: Vec<_> = lowering.iter().map(|m| m.matrix.clone()).collect();
            block_decompose(&c, &r, &l)?
        };
        Self::new(cartan, raising, lowering, blocks)
    }

    fn unvalidated(
        cartan: Vec<NamedMatrix>,
        raising: Vec<NamedMatrix>,
        lowering: Vec<NamedMatrix>,
        blocks: Vec<InvariantBlock>,
    ) -> Result<Self> {
        let dim = cartan
            .first()
            .or(raising.first())
            .map(|g| g.matrix.rows())
            .ok_or_else(|| Error::Argument("representation needs at least one generator".into()))?;
        Ok(Self {
            dim,
            cartan,
            raising,
            lowering,
            blocks,
        })
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InconsistentRepresentation(msg));
        for g in self.generators() {
            if g.matrix.rows() != self.dim || g.matrix.cols() != self.dim {
                return bad(format!("generator {} is not {}x{}", g.name, self.dim, self.dim));
            }
        }
        if self.raising.len() != self.lowering.len() {
            return bad("raising and lowering operators must pair up".into());
        }
        for h in &self.cartan {
            if !h.matrix.is_hermitian(GENERATOR_TOL * h.matrix.frobenius_norm().max(1.0)) {
                return bad(format!("Cartan element {} is not Hermitian", h.name));
            }
        }
        for (i, a) in self.cartan.iter().enumerate() {
            for b in &self.cartan[i + 1..] {
                if a.matrix.commutator(&b.matrix).frobenius_norm() > GENERATOR_TOL {
                    return bad(format!("Cartan elements {} and {} do not commute", a.name, b.name));
                }
            }
        }
        for (e, f) in self.raising.iter().zip(&self.lowering) {
            if e.matrix.dagger().frobenius_distance(&f.matrix)? > GENERATOR_TOL {
                return bad(format!("{}† differs from {}", e.name, f.name));
            }
        }
        self.root_values()?;

        let total: usize = self.blocks.iter().map(|b| b.dim).sum();
        if total != self.dim {
            return bad(format!("block dimensions sum to {total}, expected {}", self.dim));
        }
        let mut completeness = ComplexMatrix::zeros(self.dim, self.dim);
        for (k, b) in self.blocks.iter().enumerate() {
            let p = &b.projector;
            if p.rows() != self.dim || !p.is_square() {
                return bad(format!("projector {k} has wrong shape"));
            }
            if (p * p).frobenius_distance(p)? > BLOCK_TOL || !p.is_hermitian(BLOCK_TOL) {
                return bad(format!("block {k} projector is not a Hermitian idempotent"));
            }
            if (p.trace()?.re - b.dim as f64).abs() > BLOCK_TOL {
                return bad(format!("block {k} projector rank differs from dim {}", b.dim));
            }
            for g in self.generators() {
                if g.matrix.commutator(p).frobenius_norm() > BLOCK_TOL * g.matrix.frobenius_norm().max(1.0)
                {
                    return bad(format!("generator {} does not preserve block {k}", g.name));
                }
            }
            for other in &self.blocks[k + 1..] {
                if (p * &other.projector).frobenius_norm() > BLOCK_TOL {
                    return bad(format!("block {k} projector is not orthogonal to the rest"));
                }
            }
            completeness += p;
        }
        if completeness.frobenius_distance(&ComplexMatrix::identity(self.dim))? > BLOCK_TOL {
            return bad("block projectors do not resolve the identity".into());
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cartan(&self) -> &[NamedMatrix] {
        &self.cartan
    }

    pub fn raising(&self) -> &[NamedMatrix] {
        &self.raising
    }

    pub fn lowering(&self) -> &[NamedMatrix] {
        &self.lowering
    }

    pub fn blocks(&self) -> &[InvariantBlock] {
        &self.blocks
    }

    pub fn root_pairs(&self) -> usize {
        self.raising.len()
    }

    pub fn generators(&self) -> impl Iterator<Item = &NamedMatrix> {
        self.cartan.iter().chain(&self.raising).chain(&self.lowering)
    }

    /// Root values `α_r(h_i)` from `[h_i, e_α] = α(h_i)·e_α`, indexed `[root][cartan]`.
    pub fn root_values(&self) -> Result<Vec<Vec<f64>>> {
        let mut out = Vec::with_capacity(self.raising.len());
        for e in &self.raising {
            let norm2 = e.matrix.frobenius_norm().powi(2);
            if norm2 == 0.0 {
                // trivial representation: every root value fits
                out.push(vec![0.0; self.cartan.len()]);
                continue;
            }
            let mut row = Vec::with_capacity(self.cartan.len());
            for h in &self.cartan {
                let c = h.matrix.commutator(&e.matrix);
                let overlap: C64 = e
                    .matrix
                    .data()
                    .iter()
                    .zip(c.data())
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                let alpha = overlap / norm2;
                let resid = (&c - &e.matrix.scale(alpha)).frobenius_norm();
                if resid > 1e-10 * c.frobenius_norm().max(1.0) || alpha.im.abs() > 1e-10 {
                    return Err(Error::InconsistentRepresentation(format!(
                        "[{}, {}] is not a real multiple of {}",
                        h.name, e.name, e.name
                    )));
                }
                row.push(alpha.re);
            }
            out.push(row);
        }
        Ok(out)
    }

    pub fn casimir(&self) -> ComplexMatrix {
        let c: Vec<_> = self.cartan.iter().map(|m| m.matrix.clone()).collect();
        let r: Vec<_> = self.raising.iter().map(|m| m.matrix.clone()).collect();
        let l: Vec<_> = self.lowering.iter().map(|m| m.matrix.clone()).collect();
        casimir(&c, &r, &l)
    }

    /// Orthonormal basis adapted to the blocks: columns grouped block by block,
    /// each group ordered by descending weight of the first Cartan element.
    pub fn weight_basis(&self) -> Result<ComplexMatrix> {
        let h = self.cartan.first().map(|m| &m.matrix);
        let mut columns: Vec<Vec<C64>> = Vec::with_capacity(self.dim);
        for b in &self.blocks {
            let range = range_basis(&b.projector, b.dim)?;
            let mut vecs: Vec<(f64, Vec<C64>)> = match h {
                Some(h) => {
                    let local = &(&range.dagger() * h) * &range;
                    let e = eig_hermitian(&local.hermitian_part())?;
                    (0..b.dim)
                        .map(|k| {
                            let v = &range * &ComplexMatrix::column(&e.eigenvector(k));
                            (e.eigenvalues[k], v.col(0))
                        })
                        .collect()
                }
                None => (0..b.dim).map(|k| (0.0, range.col(k))).collect(),
            };
            vecs.sort_by(|a, b| b.0.total_cmp(&a.0));
            columns.extend(vecs.into_iter().map(|(_, v)| v));
        }
        Ok(ComplexMatrix::from_fn(self.dim, self.dim, |i, j| columns[j][i]))
    }

    /// Projector onto `{v ∈ block : e_{-α} v = 0 for all α}` for each block.
    pub fn lowest_weight_projectors(&self) -> Result<Vec<ComplexMatrix>> {
        let mut out = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            // PSD operator whose kernel is exactly the lowest-weight subspace of the block
            let mut a = &ComplexMatrix::identity(self.dim) - &b.projector;
            for f in &self.lowering {
                a += &(&f.matrix.dagger() * &f.matrix);
            }
            let e = eig_hermitian(&a.hermitian_part())?;
            let mut p = ComplexMatrix::zeros(self.dim, self.dim);
            for (k, &w) in e.eigenvalues.iter().enumerate() {
                if w.abs() < 1e-9 {
                    p += &ComplexMatrix::outer(&e.eigenvector(k));
                }
            }
            out.push(p);
        }
        Ok(out)
    }
}

/// Orthonormal basis (columns, dim×rank) of the range of a projector.
fn range_basis(p: &ComplexMatrix, rank: usize) -> Result<ComplexMatrix> {
    let e = eig_hermitian(&p.hermitian_part())?;
    let n = p.rows();
    Ok(ComplexMatrix::from_fn(n, rank, |i, j| {
        e.eigenvectors[(i, n - rank + j)]
    }))
}

pub fn casimir(
    cartan: &[ComplexMatrix],
    raising: &[ComplexMatrix],
    lowering: &[ComplexMatrix],
) -> ComplexMatrix {
    let n = cartan.first().or(raising.first()).map_or(1, |m| m.rows());
    let mut c = ComplexMatrix::zeros(n, n);
    for h in cartan {
        c += &(h * h);
    }
    for (e, f) in raising.iter().zip(lowering) {
        c.axpy(C64::new(0.5, 0.0), &e.anticommutator(f));
    }
    c
}

/// Casimir eigenspaces, sorted by descending eigenvalue.
pub fn block_decompose(
    cartan: &[ComplexMatrix],
    raising: &[ComplexMatrix],
    lowering: &[ComplexMatrix],
) -> Result<Vec<InvariantBlock>> {
    if raising.len() != lowering.len() {
        return Err(Error::Argument("raising and lowering operators must pair up".into()));
    }
    let c = casimir(cartan, raising, lowering);
    let scale = c.frobenius_norm().max(1.0);
    for g in cartan.iter().chain(raising).chain(lowering) {
        let defect = c.commutator(g).frobenius_norm();
        if defect > CASIMIR_CLUSTER_TOL * scale * g.frobenius_norm().max(1.0) {
            return Err(Error::InconsistentRepresentation(format!(
                "Casimir fails to commute with a generator (defect {defect:e})"
            )));
        }
    }
    let e = eig_hermitian(&c.hermitian_part())?;
    let n = c.rows();
    let mut clusters: Vec<(f64, Vec<usize>)> = Vec::new();
    for (k, &w) in e.eigenvalues.iter().enumerate() {
        match clusters.last_mut() {
            Some((first, idx)) if (w - *first).abs() <= CASIMIR_CLUSTER_TOL => idx.push(k),
            _ => clusters.push((w, vec![k])),
        }
    }
    let mut blocks: Vec<InvariantBlock> = clusters
        .into_iter()
        .map(|(_, idx)| {
            let value = idx.iter().map(|&k| e.eigenvalues[k]).sum::<f64>() / idx.len() as f64;
            let mut projector = ComplexMatrix::zeros(n, n);
            for &k in &idx {
                projector += &ComplexMatrix::outer(&e.eigenvector(k));
            }
            InvariantBlock {
                label: spin_from_casimir(value),
                casimir: value,
                dim: idx.len(),
                projector,
            }
        })
        .collect();
    blocks.reverse();
    Ok(blocks)
}

/// Spin-j irrep with j = two_j/2, basis ordered by descending m.
pub fn spin_irrep(two_j: u32) -> Representation {
    let (sz, sp) = spin_matrices(two_j);
    let sm = sp.dagger();
    let j = two_j as f64 / 2.0;
    let dim = two_j as usize + 1;
    let block = InvariantBlock {
        label: j,
        casimir: j * (j + 1.0),
        dim,
        projector: ComplexMatrix::identity(dim),
    };
    Representation::new(
        vec![NamedMatrix::new("Sz", sz)],
        vec![NamedMatrix::new("S+", sp)],
        vec![NamedMatrix::new("S-", sm)],
        vec![block],
    )
    .expect("spin irrep satisfies the Cartan-Weyl relations")
}

/// `(S_z, S_+)` for spin j = two_j/2.
pub fn spin_matrices(two_j: u32) -> (ComplexMatrix, ComplexMatrix) {
    let j = two_j as f64 / 2.0;
    let dim = two_j as usize + 1;
    let m = |k: usize| j - k as f64;
    let sz = ComplexMatrix::from_real_diag(&(0..dim).map(m).collect::<Vec<_>>());
    let mut sp = ComplexMatrix::zeros(dim, dim);
    for k in 1..dim {
        // S+|j, m_k⟩ = sqrt(j(j+1) − m_k(m_k+1)) |j, m_{k-1}⟩
        sp[(k - 1, k)] = C64::new((j * (j + 1.0) - m(k) * (m(k) + 1.0)).sqrt(), 0.0);
    }
    (sz, sp)
}

pub fn direct_sum(reps: &[Representation]) -> Result<Representation> {
    let first = reps
        .first()
        .ok_or_else(|| Error::Argument("direct sum of an empty list".into()))?;
    if reps.len() == 1 {
        return Ok(first.clone());
    }
    let shape = (first.cartan.len(), first.raising.len());
    if reps.iter().any(|r| (r.cartan.len(), r.raising.len()) != shape) {
        return Err(Error::Argument(
            "direct summands must carry the same number of generators".into(),
        ));
    }
    let stack = |pick: fn(&Representation) -> &[NamedMatrix], k: usize| {
        let parts: Vec<&ComplexMatrix> = reps.iter().map(|r| &pick(r)[k].matrix).collect();
        NamedMatrix::new(pick(first)[k].name.clone(), ComplexMatrix::block_diag(&parts))
    };
    let cartan = (0..shape.0).map(|k| stack(|r| &r.cartan, k)).collect();
    let raising = (0..shape.1).map(|k| stack(|r| &r.raising, k)).collect();
    let lowering = (0..shape.1).map(|k| stack(|r| &r.lowering, k)).collect();

    let total: usize = reps.iter().map(|r| r.dim).sum();
    let mut blocks: Vec<InvariantBlock> = Vec::new();
    let mut offset = 0;
    for r in reps {
        for b in &r.blocks {
            let mut p = ComplexMatrix::zeros(total, total);
            for i in 0..r.dim {
                for j in 0..r.dim {
                    p[(offset + i, offset + j)] = b.projector[(i, j)];
                }
            }
            // copies sharing a Casimir eigenvalue merge into one block
            match blocks
                .iter_mut()
                .find(|x| (x.casimir - b.casimir).abs() <= CASIMIR_CLUSTER_TOL)
            {
                Some(existing) => {
                    existing.projector += &p;
                    existing.dim += b.dim;
                }
                None => blocks.push(InvariantBlock {
                    label: b.label,
                    casimir: b.casimir,
                    dim: b.dim,
                    projector: p,
                }),
            }
        }
        offset += r.dim;
    }
    Representation::new(cartan, raising, lowering, blocks)
}

/// Single-qubit raising operator |↑⟩⟨↓| with |↑⟩ the first basis vector.
fn sigma_plus() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[vec![ZERO, ONE], vec![ZERO, ZERO]]).unwrap()
}

/// `a` acting on qubit `k` of `n`, identity elsewhere.
pub fn embed_single_qubit(a: &ComplexMatrix, k: usize, n: usize) -> ComplexMatrix {
    let id = ComplexMatrix::identity(2);
    let mut out = if k == 0 { a.clone() } else { id.clone() };
    for q in 1..n {
        out = out.kron(if q == k { a } else { &id });
    }
    out
}

/// Collective spin `S_a = Σ_k σ_a^(k)/2` on n qubits.
pub fn collective_spin(n_qubits: usize) -> Result<Representation> {
    if !(1..=MAX_COLLECTIVE_QUBITS).contains(&n_qubits) {
        return Err(Error::Argument(format!(
            "collective spin needs 1..={MAX_COLLECTIVE_QUBITS} qubits, got {n_qubits}"
        )));
    }
    let dim = 1usize << n_qubits;
    let half_z = pauli_z().scale_real(0.5);
    let sp1 = sigma_plus();
    let mut sz = ComplexMatrix::zeros(dim, dim);
    let mut sp = ComplexMatrix::zeros(dim, dim);
    for k in 0..n_qubits {
        sz += &embed_single_qubit(&half_z, k, n_qubits);
        sp += &embed_single_qubit(&sp1, k, n_qubits);
    }
    let sm = sp.dagger();
    Representation::from_generators(
        vec![NamedMatrix::new("Sz", sz)],
        vec![NamedMatrix::new("S+", sp)],
        vec![NamedMatrix::new("S-", sm)],
    )
}

/// n-fold Kronecker product of Pauli letters, e.g. `"XZ"` → σ_x ⊗ σ_z.
pub fn pauli_word(labels: &str) -> Result<ComplexMatrix> {
    if labels.is_empty() {
        return Err(Error::Parse("empty Pauli word".into()));
    }
    let mut out: Option<ComplexMatrix> = None;
    for (pos, ch) in labels.chars().enumerate() {
        let m = match ch {
            'I' => ComplexMatrix::identity(2),
            'X' => pauli_x(),
            'Y' => pauli_y(),
            'Z' => pauli_z(),
            other => {
                return Err(Error::Parse(format!(
                    "invalid Pauli letter {other:?} at position {pos}"
                )))
            }
        };
        out = Some(match out {
            None => m,
            Some(acc) => acc.kron(&m),
        });
    }
    Ok(out.unwrap())
}

/// `⊕_λ r_λ 1_λ`, one weight per block; requires `r_λ ≥ 0` and `Σ r_λ dim_λ = 1`.
pub fn unpolarized_state(rep: &Representation, weights: &[f64]) -> Result<ComplexMatrix> {
    if weights.len() != rep.blocks.len() {
        return Err(Error::Argument(format!(
            "{} weights for {} blocks",
            weights.len(),
            rep.blocks.len()
        )));
    }
    if let Some(w) = weights.iter().find(|w| !(**w >= 0.0) || !w.is_finite()) {
        return Err(Error::Argument(format!("negative or non-finite weight {w}")));
    }
    let tr: f64 = weights
        .iter()
        .zip(&rep.blocks)
        .map(|(w, b)| w * b.dim as f64)
        .sum();
    if (tr - 1.0).abs() > 1e-12 {
        return Err(Error::Argument(format!("weighted trace is {tr}, expected 1")));
    }
    let mut rho = ComplexMatrix::zeros(rep.dim, rep.dim);
    for (w, b) in weights.iter().zip(&rep.blocks) {
        rho.axpy(C64::new(*w, 0.0), &b.projector);
    }
    Ok(rho)
}
