// Copyright 2026 The symdepol Authors
// SPDX-License-Identifier: Apache-2.0

//! Time evolution under a Lindblad generator.
//!
//! Exact propagation exponentiates the dense Liouvillian at every requested
//! time, `vec ρ(t) = exp(S·t)·vec ρ₀`. Stepped propagation iterates the
//! first-order Kraus map instead and converges to the exact result at first
//! order in the step.

use std::fmt::Write as _;

use serde::Serialize;

use crate::channel::{first_order_kraus, LindbladGenerator, Superoperator};
use crate::error::{Error, Result};
use crate::liealg::Representation;
use crate::matkernel::{expm, svd_nullspace, ComplexMatrix, NULLSPACE_TOL};
use crate::state::{check_state, StateTolerance};

/// Multiple of the slowest rate used as the default asymptotic horizon.
pub const HORIZON_RATE_MULTIPLE: f64 = 20.0;
/// Maximum number of horizon doublings tried by [`asymptotic_state_auto`].
pub const MAX_HORIZON_DOUBLINGS: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Observable {
    pub name: String,
    pub values: Vec<f64>,
}

/// Time-ordered states plus named real observables sampled on the same grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    times: Vec<f64>,
    states: Vec<ComplexMatrix>,
    observables: Vec<Observable>,
}

impl Trajectory {
    /// Checks strictly increasing times and the density-matrix invariants.
    pub fn new(times: Vec<f64>, states: Vec<ComplexMatrix>) -> Result<Self> {
        if times.len() != states.len() || times.is_empty() {
            return Err(Error::Argument(format!(
                "{} times for {} states",
                times.len(),
                states.len()
            )));
        }
        check_times(&times)?;
        let dim = states[0].rows();
        for (t, s) in times.iter().zip(&states) {
            check_state(s, dim, StateTolerance::default()).map_err(|e| Error::Propagation {
                time: *t,
                reason: e.to_string(),
            })?;
        }
        Ok(Self {
            times,
            states,
            observables: Vec::new(),
        })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[ComplexMatrix] {
        &self.states
    }

    pub fn observables(&self) -> &[Observable] {
        &self.observables
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> &ComplexMatrix {
        self.states.last().expect("trajectory is nonempty")
    }

    pub fn observable(&self, name: &str) -> Option<&[f64]> {
        self.observables
            .iter()
            .find(|o| o.name == name)
            .map(|o| o.values.as_slice())
    }

    /// Appends a column computed from each state.
    pub fn record(&mut self, name: impl Into<String>, f: impl Fn(&ComplexMatrix) -> f64) {
        let values = self.states.iter().map(f).collect();
        self.observables.push(Observable {
            name: name.into(),
            values,
        });
    }

    pub fn push_observable(&mut self, name: impl Into<String>, values: Vec<f64>) -> Result<()> {
        if values.len() != self.times.len() {
            return Err(Error::Argument(format!(
                "observable has {} samples, trajectory has {}",
                values.len(),
                self.times.len()
            )));
        }
        self.observables.push(Observable {
            name: name.into(),
            values,
        });
        Ok(())
    }

    /// Records the populations ⟨k|ρ|k⟩ as `p0`, `p1`, ...
    pub fn record_populations(&mut self, prefix: &str) {
        let dim = self.states[0].rows();
        for k in 0..dim {
            self.record(format!("{prefix}p{k}"), move |s| s[(k, k)].re);
        }
    }

    /// `t,<observables...>` with every number printed as `{:.16e}` and `\n` line ends.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t");
        for o in &self.observables {
            out.push(',');
            out.push_str(&o.name);
        }
        out.push('\n');
        for (i, t) in self.times.iter().enumerate() {
            write!(out, "{}", format_number(*t)).unwrap();
            for o in &self.observables {
                write!(out, ",{}", format_number(o.values[i])).unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// Full states as JSON: `{"times": [...], "states": [matrix, ...]}`.
    pub fn states_json(&self) -> serde_json::Value {
        serde_json::json!({
            "times": self.times,
            "states": self.states,
        })
    }
}

/// Fixed 17-significant-digit scientific notation.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

fn check_times(times: &[f64]) -> Result<()> {
    if let Some(t) = times.iter().find(|t| !(**t >= 0.0) || !t.is_finite()) {
        return Err(Error::Argument(format!("invalid sample time {t}")));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Argument("sample times must be strictly increasing".into()));
    }
    Ok(())
}

/// `n_samples` evenly spaced times covering `[0, t_max]`.
pub fn time_grid(t_max: f64, n_samples: usize) -> Result<Vec<f64>> {
    if n_samples < 2 || !(t_max > 0.0) || !t_max.is_finite() {
        return Err(Error::Argument(format!(
            "time grid needs t_max > 0 and at least 2 samples (got {t_max}, {n_samples})"
        )));
    }
    let step = t_max / (n_samples - 1) as f64;
    Ok((0..n_samples).map(|k| k as f64 * step).collect())
}

/// `ρ(t) = unvec(exp(S·t)·vec ρ₀)` for one time.
pub fn evolve(liouvillian: &Superoperator, rho0: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    if t == 0.0 {
        return Ok(rho0.clone());
    }
    let prop = expm(&liouvillian.matrix().scale_real(t))?;
    let v = prop.matmul(&rho0.vec())?;
    ComplexMatrix::unvec(v.data(), liouvillian.dim())
}

pub fn propagate(
    g: &LindbladGenerator,
    rho0: &ComplexMatrix,
    times: &[f64],
) -> Result<Trajectory> {
    check_state(rho0, g.dim(), StateTolerance::default())?;
    check_times(times)?;
    let s = g.liouvillian();
    let mut states = Vec::with_capacity(times.len());
    for &t in times {
        let rho = evolve(&s, rho0, t).map_err(|e| propagation_error(t, e))?;
        states.push(rho);
    }
    Trajectory::new(times.to_vec(), states)
}

fn propagation_error(time: f64, e: Error) -> Error {
    match e {
        Error::Propagation { .. } => e,
        other => Error::Propagation {
            time,
            reason: other.to_string(),
        },
    }
}

/// Iterates the first-order Kraus map `n_steps` times, renormalizing the trace
/// after each step (the map is trace preserving only to O(τ²)).
pub fn propagate_stepped(
    g: &LindbladGenerator,
    rho0: &ComplexMatrix,
    tau: f64,
    n_steps: usize,
) -> Result<Trajectory> {
    check_state(rho0, g.dim(), StateTolerance::default())?;
    let step = first_order_kraus(g, tau)?;
    let mut times = Vec::with_capacity(n_steps + 1);
    let mut states = Vec::with_capacity(n_steps + 1);
    let mut rho = rho0.clone();
    times.push(0.0);
    states.push(rho.clone());
    for k in 1..=n_steps {
        let next = step.map(&rho);
        let tr = next.trace()?.re;
        if !(tr > 0.0) || !tr.is_finite() {
            return Err(Error::Propagation {
                time: k as f64 * tau,
                reason: format!("trace collapsed to {tr}"),
            });
        }
        rho = next.scale_real(1.0 / tr);
        times.push(k as f64 * tau);
        states.push(rho.clone());
    }
    Trajectory::new(times, states)
}

/// Orthonormal (in Hilbert-Schmidt) basis of ker 𝓛, unvectorized.
pub fn fixed_points(g: &LindbladGenerator) -> Result<Vec<ComplexMatrix>> {
    fixed_points_with_tol(g, NULLSPACE_TOL)
}

/// [`fixed_points`] with an explicit relative nullspace tolerance.
pub fn fixed_points_with_tol(g: &LindbladGenerator, tol: f64) -> Result<Vec<ComplexMatrix>> {
    let s = g.liouvillian();
    svd_nullspace(s.matrix(), tol)
        .into_iter()
        .map(|v| ComplexMatrix::unvec(v.data(), g.dim()))
        .collect()
}

/// Distance from `x` to the span of a Hilbert-Schmidt orthonormal basis.
pub fn span_residual(basis: &[ComplexMatrix], x: &ComplexMatrix) -> Result<f64> {
    let mut rest = x.clone();
    for b in basis {
        let overlap: crate::matkernel::C64 = b
            .data()
            .iter()
            .zip(x.data())
            .map(|(u, v)| u.conj() * v)
            .sum();
        rest.axpy(-overlap, b);
    }
    Ok(rest.frobenius_norm())
}

/// `HORIZON_RATE_MULTIPLE / (smallest positive rate)`.
pub fn default_horizon(g: &LindbladGenerator) -> Result<f64> {
    g.min_positive_rate()
        .map(|r| HORIZON_RATE_MULTIPLE / r)
        .ok_or_else(|| Error::Argument("generator has no dissipation, no asymptote to find".into()))
}

/// `ρ(horizon)`, accepted only if `‖𝓛ρ(horizon)‖_F ≤ tol` and
/// `‖ρ(2·horizon) − ρ(horizon)‖_F ≤ tol`.
pub fn asymptotic_state(
    g: &LindbladGenerator,
    rho0: &ComplexMatrix,
    horizon: f64,
    tol: f64,
) -> Result<ComplexMatrix> {
    check_state(rho0, g.dim(), StateTolerance::default())?;
    if !(horizon > 0.0) || !horizon.is_finite() {
        return Err(Error::Argument(format!("horizon must be positive, got {horizon}")));
    }
    let s = g.liouvillian();
    let (rho, residual, drift) = probe_horizon(g, &s, rho0, horizon)?;
    if residual <= tol && drift <= tol {
        Ok(rho)
    } else {
        Err(Error::Convergence {
            horizon,
            residual,
            drift,
        })
    }
}

fn probe_horizon(
    g: &LindbladGenerator,
    s: &Superoperator,
    rho0: &ComplexMatrix,
    horizon: f64,
) -> Result<(ComplexMatrix, f64, f64)> {
    let rho = evolve(s, rho0, horizon).map_err(|e| propagation_error(horizon, e))?;
    let later = evolve(s, &rho, horizon).map_err(|e| propagation_error(2.0 * horizon, e))?;
    let residual = g.action(&rho)?.frobenius_norm();
    let drift = later.frobenius_distance(&rho)?;
    Ok((rho, residual, drift))
}

/// [`asymptotic_state`] starting from [`default_horizon`] and doubling the
/// horizon until the checks pass.
pub fn asymptotic_state_auto(
    g: &LindbladGenerator,
    rho0: &ComplexMatrix,
    tol: f64,
) -> Result<ComplexMatrix> {
    check_state(rho0, g.dim(), StateTolerance::default())?;
    let s = g.liouvillian();
    let mut horizon = default_horizon(g)?;
    let mut last = (0.0, 0.0);
    for _ in 0..=MAX_HORIZON_DOUBLINGS {
        let (rho, residual, drift) = probe_horizon(g, &s, rho0, horizon)?;
        if residual <= tol && drift <= tol {
            return Ok(rho);
        }
        last = (residual, drift);
        horizon *= 2.0;
    }
    Err(Error::Convergence {
        horizon: horizon / 2.0,
        residual: last.0,
        drift: last.1,
    })
}

/// `(label, tr(P_λ ρ))` per block.
pub fn block_traces(rep: &Representation, rho: &ComplexMatrix) -> Result<Vec<(f64, f64)>> {
    if rho.rows() != rep.dim() || rho.cols() != rep.dim() {
        return Err(Error::Shape(format!(
            "state is {}x{}, representation has dim {}",
            rho.rows(),
            rho.cols(),
            rep.dim()
        )));
    }
    rep.blocks()
        .iter()
        .map(|b| Ok((b.label, (&b.projector * rho).trace()?.re)))
        .collect()
}
