// Copyright 2026 The symdepol Authors
// SPDX-License-Identifier: Apache-2.0

//! Named channels: qubit flips and depolarizers, tensor Pauli channels, and the
//! symmetry-adapted dephasing, damping and depolarizing generators built from a
//! [`Representation`].
//!
//! The adapted generators use only algebra elements as jump operators:
//!
//! | channel                | jumps                          | fixed points                     |
//! |------------------------|--------------------------------|----------------------------------|
//! | dephasing              | `h_r` (rate `a_r`)             | states diagonal in the weights   |
//! | damping                | `e_{-α_r}`                     | lowest-weight state of each block|
//! | symmetric depolarizer  | `e_{-α_r}` and `e_{+α_r}`      | `⊕_λ r_λ 1_λ` (unpolarized)      |

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::channel::{Jump, KrausChannel, LindbladGenerator};
use crate::error::{Error, Result};
use crate::liealg::{pauli_word, Representation};
use crate::matkernel::{eig_hermitian, pauli_x, pauli_y, pauli_z, ComplexMatrix, C64};

/// Tensor Pauli channels are limited to 6 qubits (4⁶ Kraus operators on dim 64).
pub const MAX_PAULI_QUBITS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn pauli(self) -> ComplexMatrix {
        match self {
            Axis::X => pauli_x(),
            Axis::Y => pauli_y(),
            Axis::Z => pauli_z(),
        }
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "x" => Ok(Axis::X),
            "y" => Ok(Axis::Y),
            "z" => Ok(Axis::Z),
            other => Err(Error::Parse(format!("unknown axis {other:?}"))),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        };
        f.write_str(s)
    }
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Argument(format!("probability {p} outside [0, 1]")))
    }
}

/// Bit (x), bit-phase (y) or phase (z) flip: `K₀ = √(1−p/2)·1`, `K₁ = √(p/2)·σ`.
pub fn flip_channel(axis: Axis, p: f64) -> Result<KrausChannel> {
    check_probability(p)?;
    KrausChannel::new(vec![
        ComplexMatrix::identity(2).scale_real((1.0 - p / 2.0).sqrt()),
        axis.pauli().scale_real((p / 2.0).sqrt()),
    ])
}

/// Kraus form of `ρ ↦ (1−p)ρ + (p/3)Σ_j σ_j ρ σ_j`.
pub fn depolarizing_qubit_cpm(p: f64) -> Result<KrausChannel> {
    check_probability(p)?;
    let a = (p / 3.0).sqrt();
    KrausChannel::new(vec![
        ComplexMatrix::identity(2).scale_real((1.0 - p).sqrt()),
        pauli_x().scale_real(a),
        pauli_y().scale_real(a),
        pauli_z().scale_real(a),
    ])
}

/// The depolarizing map evaluated directly, `(1−p)ρ + (p/3)Σ_j σ_j ρ σ_j`.
pub fn depolarize_qubit(p: f64, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_probability(p)?;
    if rho.rows() != 2 || rho.cols() != 2 {
        return Err(Error::Shape("qubit map needs a 2x2 argument".into()));
    }
    let mut out = rho.scale_real(1.0 - p);
    for s in [pauli_x(), pauli_y(), pauli_z()] {
        out.axpy(C64::new(p / 3.0, 0.0), &(&(&s * rho) * &s));
    }
    Ok(out)
}

/// Generator of `ρ̇ = −Γ(ρ − 1/2)`: Pauli jumps σ_x, σ_y, σ_z at rate Γ/4 each,
/// using `Σ_j σ_j ρ σ_j = 2·tr(ρ)·1 − ρ`.
pub fn depolarizing_qubit_lindblad(gamma: f64) -> Result<LindbladGenerator> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::Argument(format!("depolarization rate must be positive, got {gamma}")));
    }
    LindbladGenerator::dissipative(
        2,
        [pauli_x(), pauli_y(), pauli_z()]
            .into_iter()
            .map(|s| Jump::new(gamma / 4.0, s))
            .collect(),
    )
}

/// Qubit Bloch vector, `ρ = ½(1 + s·σ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct BlochVector([f64; 3]);

impl BlochVector {
    pub fn new(s: [f64; 3]) -> Result<Self> {
        let norm = s.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !norm.is_finite() || norm > 1.0 + 1e-12 {
            return Err(Error::Argument(format!("Bloch vector norm {norm} exceeds 1")));
        }
        Ok(Self(s))
    }

    pub fn components(&self) -> [f64; 3] {
        self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

impl TryFrom<[f64; 3]> for BlochVector {
    type Error = Error;

    fn try_from(s: [f64; 3]) -> Result<Self> {
        Self::new(s)
    }
}

impl From<BlochVector> for [f64; 3] {
    fn from(b: BlochVector) -> Self {
        b.0
    }
}

/// `s_j = tr(ρ σ_j)`; the imaginary parts of the traces are dropped.
pub fn bloch_of(rho: &ComplexMatrix) -> Result<BlochVector> {
    if rho.rows() != 2 || rho.cols() != 2 {
        return Err(Error::Shape("Bloch vector needs a 2x2 state".into()));
    }
    let s = [pauli_x(), pauli_y(), pauli_z()].map(|p| (rho * &p).trace().unwrap().re);
    BlochVector::new(s)
}

pub fn state_of(s: &BlochVector) -> ComplexMatrix {
    let mut rho = ComplexMatrix::identity(2);
    for (c, p) in s.0.iter().zip([pauli_x(), pauli_y(), pauli_z()]) {
        rho.axpy(C64::new(*c, 0.0), &p);
    }
    rho.scale_real(0.5)
}

/// All n-letter Pauli words with their probabilities under independent
/// single-qubit depolarization: `(1−p)^(n−k)·(p/3)^k` for k non-identity letters.
pub fn pauli_word_weights(n: usize, p: f64) -> Result<Vec<(String, f64)>> {
    check_probability(p)?;
    if !(1..=MAX_PAULI_QUBITS).contains(&n) {
        return Err(Error::Argument(format!(
            "Pauli channel needs 1..={MAX_PAULI_QUBITS} qubits, got {n}"
        )));
    }
    let letters = ['I', 'X', 'Y', 'Z'];
    Ok((0..4usize.pow(n as u32))
        .map(|mut code| {
            let mut word = vec!['I'; n];
            for slot in (0..n).rev() {
                word[slot] = letters[code % 4];
                code /= 4;
            }
            let k = word.iter().filter(|&&c| c != 'I').count() as i32;
            let weight = (1.0 - p).powi(n as i32 - k) * (p / 3.0).powi(k);
            (word.into_iter().collect(), weight)
        })
        .collect())
}

/// n-fold tensor power of [`depolarizing_qubit_cpm`], one Kraus operator per Pauli word.
pub fn pauli_product_channel(n: usize, p: f64) -> Result<KrausChannel> {
    let ops = pauli_word_weights(n, p)?
        .into_iter()
        .map(|(w, weight)| Ok(pauli_word(&w)?.scale_real(weight.sqrt())))
        .collect::<Result<Vec<_>>>()?;
    KrausChannel::new(ops)
}

fn check_rates(rates: &[f64], expected: usize, what: &str) -> Result<()> {
    if rates.len() != expected {
        return Err(Error::Argument(format!(
            "{} rates given, the representation has {expected} {what}",
            rates.len()
        )));
    }
    if let Some(r) = rates.iter().find(|r| !(**r >= 0.0) || !r.is_finite()) {
        return Err(Error::Argument(format!("invalid rate {r}")));
    }
    Ok(())
}

/// Jumps `h_r` with rates `a_r`, one per Cartan element.
pub fn dephasing_channel(rep: &Representation, rates: &[f64]) -> Result<LindbladGenerator> {
    check_rates(rates, rep.cartan().len(), "Cartan elements")?;
    let jumps = rep
        .cartan()
        .iter()
        .zip(rates)
        .map(|(h, &a)| Jump::new(a, h.matrix.clone()))
        .collect();
    LindbladGenerator::dissipative(rep.dim(), jumps)
}

/// Jumps `e_{-α_r}` with rates `a_r`, one per root pair.
pub fn damping_channel(rep: &Representation, rates: &[f64]) -> Result<LindbladGenerator> {
    check_rates(rates, rep.root_pairs(), "root pairs")?;
    let jumps = rep
        .lowering()
        .iter()
        .zip(rates)
        .map(|(f, &a)| Jump::new(a, f.matrix.clone()))
        .collect();
    LindbladGenerator::dissipative(rep.dim(), jumps)
}

/// Jumps `e_{-α_r}` followed by `e_{+α_r}`, both at rate `a_r`.
pub fn symmetric_depolarizer(rep: &Representation, rates: &[f64]) -> Result<LindbladGenerator> {
    check_rates(rates, rep.root_pairs(), "root pairs")?;
    let mut jumps = Vec::with_capacity(2 * rates.len());
    for ((f, e), &a) in rep.lowering().iter().zip(rep.raising()).zip(rates) {
        jumps.push(Jump::new(a, f.matrix.clone()));
        jumps.push(Jump::new(a, e.matrix.clone()));
    }
    LindbladGenerator::dissipative(rep.dim(), jumps)
}

fn check_operator(rep: &Representation, rho: &ComplexMatrix) -> Result<()> {
    if rho.rows() != rep.dim() || rho.cols() != rep.dim() {
        return Err(Error::Shape(format!(
            "operator is {}x{}, representation has dim {}",
            rho.rows(),
            rho.cols(),
            rep.dim()
        )));
    }
    Ok(())
}

/// Long-time limit of [`dephasing_channel`]: ρ₀ pinched onto the joint
/// eigenspaces of the Cartan elements with nonzero rate.
pub fn dephasing_asymptote(
    rep: &Representation,
    rates: &[f64],
    rho0: &ComplexMatrix,
) -> Result<ComplexMatrix> {
    check_rates(rates, rep.cartan().len(), "Cartan elements")?;
    check_operator(rep, rho0)?;
    let n = rep.dim();
    // generic combination separates joint eigenspaces
    let mut combo = ComplexMatrix::zeros(n, n);
    let mut weight = 1.0;
    for (h, &a) in rep.cartan().iter().zip(rates) {
        if a > 0.0 {
            combo.axpy(C64::new(weight, 0.0), &h.matrix);
            weight *= std::f64::consts::SQRT_2 + 0.1;
        }
    }
    let e = eig_hermitian(&combo.hermitian_part())?;
    let mut out = ComplexMatrix::zeros(n, n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (e.eigenvalues[end] - e.eigenvalues[start]).abs() <= 1e-8 {
            end += 1;
        }
        let mut proj = ComplexMatrix::zeros(n, n);
        for k in start..end {
            proj += &ComplexMatrix::outer(&e.eigenvector(k));
        }
        out += &(&(&proj * rho0) * &proj);
        start = end;
    }
    Ok(out)
}

/// `Σ_λ tr(P_λ ρ₀)/rank(Q_λ) · Q_λ` with `Q_λ` the lowest-weight projector of block λ.
pub fn damping_asymptote(rep: &Representation, rho0: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_operator(rep, rho0)?;
    let lw = rep.lowest_weight_projectors()?;
    let mut out = ComplexMatrix::zeros(rep.dim(), rep.dim());
    for (b, q) in rep.blocks().iter().zip(&lw) {
        let weight = (&b.projector * rho0).trace()?.re;
        let rank = q.trace()?.re.round().max(1.0);
        out.axpy(C64::new(weight / rank, 0.0), q);
    }
    Ok(out)
}

/// `Σ_λ tr(P_λ ρ₀)/dim_λ · 1_λ`, the block-uniform state with ρ₀'s block populations.
pub fn unpolarized_asymptote(rep: &Representation, rho0: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_operator(rep, rho0)?;
    let mut out = ComplexMatrix::zeros(rep.dim(), rep.dim());
    for b in rep.blocks() {
        let weight = (&b.projector * rho0).trace()?.re;
        out.axpy(C64::new(weight / b.dim as f64, 0.0), &b.projector);
    }
    Ok(out)
}
