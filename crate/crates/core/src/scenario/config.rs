// Copyright 2026 The symdepol Authors
// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liealg::{collective_spin, direct_sum, spin_irrep, Representation};
use crate::matkernel::{ComplexMatrix, C64};
use crate::state::{basis_state, check_state, maximally_mixed, pure_state, StateTolerance};
use crate::zoo::{state_of, BlochVector};

pub const CONFIG_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioName {
    BlochShrink,
    BlockDepolarize,
    DephaseVsDamp,
    DrivenRwa,
}

impl ScenarioName {
    pub const ALL: [ScenarioName; 4] = [
        ScenarioName::BlochShrink,
        ScenarioName::BlockDepolarize,
        ScenarioName::DephaseVsDamp,
        ScenarioName::DrivenRwa,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioName::BlochShrink => "bloch_shrink",
            ScenarioName::BlockDepolarize => "block_depolarize",
            ScenarioName::DephaseVsDamp => "dephase_vs_damp",
            ScenarioName::DrivenRwa => "driven_rwa",
        }
    }
}

impl std::str::FromStr for ScenarioName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::Argument(format!("unknown scenario '{s}'")))
    }
}

impl std::fmt::Display for ScenarioName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RepresentationSpec {
    /// Spin j = two_j/2.
    Irrep { two_j: u32 },
    DirectSum { two_js: Vec<u32> },
    /// Total spin of n qubits.
    Collective { qubits: usize },
}

impl RepresentationSpec {
    pub fn build(&self) -> Result<Representation> {
        match self {
            RepresentationSpec::Irrep { two_j } => Ok(spin_irrep(*two_j)),
            RepresentationSpec::DirectSum { two_js } => {
                let parts: Vec<_> = two_js.iter().map(|&t| spin_irrep(t)).collect();
                direct_sum(&parts)
            }
            RepresentationSpec::Collective { qubits } => collective_spin(*qubits),
        }
    }
}

/// Frame-rotated effective generator used by the driven-damping comparison.
///
/// Both carry `H = g·S_z` and an `S_z` jump at rate γ; they differ in the
/// rate on the `S_±` jumps.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RwaCoefficients {
    /// `S_±` at γ/4, from expanding `U S_- U†` and dropping oscillating cross terms.
    #[default]
    Derived,
    /// `S_±` at γ, the same prefactor as the `S_z` term.
    Uniform,
}

impl RwaCoefficients {
    pub const ALL: [RwaCoefficients; 2] = [RwaCoefficients::Derived, RwaCoefficients::Uniform];

    pub fn sideband_factor(self) -> f64 {
        match self {
            RwaCoefficients::Derived => 0.25,
            RwaCoefficients::Uniform => 1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RwaCoefficients::Derived => "derived",
            RwaCoefficients::Uniform => "uniform",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientSelection {
    Derived,
    Uniform,
    Both,
}

impl CoefficientSelection {
    pub fn variants(self) -> Vec<RwaCoefficients> {
        match self {
            CoefficientSelection::Derived => vec![RwaCoefficients::Derived],
            CoefficientSelection::Uniform => vec![RwaCoefficients::Uniform],
            CoefficientSelection::Both => RwaCoefficients::ALL.to_vec(),
        }
    }
}

fn default_sweep() -> Vec<f64> {
    vec![50.0, 100.0, 200.0]
}

fn default_selection() -> CoefficientSelection {
    CoefficientSelection::Both
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case", deny_unknown_fields)]
pub enum ChannelSpec {
    /// Qubit depolarizer with Bloch-vector lifetime 1/gamma.
    QubitDepolarizer { gamma: f64 },
    SymmetricDepolarizer { rates: Vec<f64> },
    DephaseVsDamp {
        dephasing_rates: Vec<f64>,
        damping_rates: Vec<f64>,
    },
    /// `H = g·S_x` plus damping along `S_-` at rate gamma.
    DrivenDamping {
        g: f64,
        gamma: f64,
        /// Drive-to-damping ratios g/γ for the accuracy sweep.
        #[serde(default = "default_sweep")]
        sweep: Vec<f64>,
        /// Variants whose sweep decides pass/fail.
        #[serde(default = "default_selection")]
        assert_coefficients: CoefficientSelection,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StateSpec {
    Bloch { s: [f64; 3] },
    Basis { index: usize },
    /// First basis vector (largest weight).
    HighestWeight,
    /// Last basis vector (smallest weight).
    LowestWeight,
    MaximallyMixed,
    Diagonal { populations: Vec<f64> },
    Pure { amplitudes: Vec<[f64; 2]> },
    Matrix { rho: ComplexMatrix },
}

impl StateSpec {
    pub fn build(&self, dim: usize) -> Result<ComplexMatrix> {
        let rho = match self {
            StateSpec::Bloch { s } => {
                if dim != 2 {
                    return Err(Error::Argument(format!(
                        "Bloch-vector state needs a qubit, representation has dim {dim}"
                    )));
                }
                state_of(&BlochVector::new(*s)?)
            }
            StateSpec::Basis { index } => basis_state(dim, *index)?,
            StateSpec::HighestWeight => basis_state(dim, 0)?,
            StateSpec::LowestWeight => basis_state(dim, dim - 1)?,
            StateSpec::MaximallyMixed => maximally_mixed(dim),
            StateSpec::Diagonal { populations } => {
                if populations.len() != dim {
                    return Err(Error::Argument(format!(
                        "{} populations for dim {dim}",
                        populations.len()
                    )));
                }
                ComplexMatrix::from_real_diag(populations)
            }
            StateSpec::Pure { amplitudes } => {
                if amplitudes.len() != dim {
                    return Err(Error::Argument(format!(
                        "{} amplitudes for dim {dim}",
                        amplitudes.len()
                    )));
                }
                let psi: Vec<C64> = amplitudes.iter().map(|[re, im]| C64::new(*re, *im)).collect();
                pure_state(&psi)?
            }
            StateSpec::Matrix { rho } => rho.clone(),
        };
        check_state(&rho, dim, StateTolerance::default())?;
        Ok(rho)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub t_max: f64,
    pub samples: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    /// Trajectory CSV; defaults to `<scenario>.csv`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
    /// Report JSON; defaults to `<scenario>_report.json`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<PathBuf>,
    /// Optional full-state JSON sidecar.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub states: Option<PathBuf>,
}

impl OutputSpec {
    fn is_default(&self) -> bool {
        *self == Self::default()
    }
}

/// Tolerances; unset fields take per-scenario defaults.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Pass threshold for the scenario's main comparison.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check: Option<f64>,
    /// Residual/drift bound for the asymptotic-state search.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convergence: Option<f64>,
    /// Bound on block-trace drift along a trajectory.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block_trace: Option<f64>,
    /// Relative bound on fitted decay rates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rate_fit: Option<f64>,
}

impl Tolerances {
    fn is_default(&self) -> bool {
        *self == Self::default()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub version: u32,
    pub scenario: ScenarioName,
    pub representation: RepresentationSpec,
    pub channel: ChannelSpec,
    pub initial_state: StateSpec,
    pub time_grid: TimeGrid,
    #[serde(default, skip_serializing_if = "OutputSpec::is_default")]
    pub output: OutputSpec,
    #[serde(default, skip_serializing_if = "Tolerances::is_default")]
    pub tolerances: Tolerances,
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Checks everything that can be checked without running the scenario.
    pub fn validate(&self) -> Result<()> {
        if self.version != CONFIG_VERSION {
            return Err(Error::Parse(format!(
                "unsupported config version {}, expected {CONFIG_VERSION}",
                self.version
            )));
        }
        if !(self.time_grid.t_max > 0.0) || !self.time_grid.t_max.is_finite() {
            return Err(Error::Argument("time_grid.t_max must be positive".into()));
        }
        if self.time_grid.samples < 2 {
            return Err(Error::Argument("time_grid.samples must be at least 2".into()));
        }
        let t = &self.tolerances;
        for v in [t.check, t.convergence, t.block_trace, t.rate_fit].into_iter().flatten() {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Argument(format!("tolerance {v} must be positive")));
            }
        }
        let expected = match &self.channel {
            ChannelSpec::QubitDepolarizer { gamma } => {
                check_nonnegative("gamma", *gamma)?;
                ScenarioName::BlochShrink
            }
            ChannelSpec::SymmetricDepolarizer { rates } => {
                rates.iter().try_for_each(|r| check_nonnegative("rate", *r))?;
                ScenarioName::BlockDepolarize
            }
            ChannelSpec::DephaseVsDamp {
                dephasing_rates,
                damping_rates,
            } => {
                dephasing_rates
                    .iter()
                    .chain(damping_rates)
                    .try_for_each(|r| check_nonnegative("rate", *r))?;
                ScenarioName::DephaseVsDamp
            }
            ChannelSpec::DrivenDamping { g, gamma, sweep, .. } => {
                check_nonnegative("g", *g)?;
                check_nonnegative("gamma", *gamma)?;
                sweep.iter().try_for_each(|r| check_nonnegative("sweep ratio", *r))?;
                ScenarioName::DrivenRwa
            }
        };
        if expected != self.scenario {
            return Err(Error::Argument(format!(
                "scenario {} cannot use the channel configured for {}",
                self.scenario, expected
            )));
        }
        Ok(())
    }

    pub fn csv_path(&self) -> PathBuf {
        self.output
            .csv
            .clone()
            .unwrap_or_else(|| PathBuf::from(format!("{}.csv", self.scenario)))
    }

    pub fn report_path(&self) -> PathBuf {
        self.output
            .report
            .clone()
            .unwrap_or_else(|| PathBuf::from(format!("{}_report.json", self.scenario)))
    }

    /// Default configuration shipped for each scenario.
    pub fn template(name: ScenarioName) -> Self {
        let (representation, channel, initial_state, time_grid) = match name {
            ScenarioName::BlochShrink => (
                RepresentationSpec::Irrep { two_j: 1 },
                ChannelSpec::QubitDepolarizer { gamma: 1.0 },
                StateSpec::Bloch { s: [0.3, -0.4, 0.8] },
                TimeGrid { t_max: 5.0, samples: 50 },
            ),
            ScenarioName::BlockDepolarize => (
                RepresentationSpec::Collective { qubits: 2 },
                ChannelSpec::SymmetricDepolarizer { rates: vec![1.0] },
                StateSpec::HighestWeight,
                TimeGrid { t_max: 10.0, samples: 41 },
            ),
            ScenarioName::DephaseVsDamp => (
                RepresentationSpec::Irrep { two_j: 2 },
                ChannelSpec::DephaseVsDamp {
                    dephasing_rates: vec![1.0],
                    damping_rates: vec![1.0],
                },
                StateSpec::Pure {
                    amplitudes: vec![[0.6, 0.0], [0.0, 0.48], [0.64, 0.0]],
                },
                TimeGrid { t_max: 4.0, samples: 41 },
            ),
            ScenarioName::DrivenRwa => (
                RepresentationSpec::Irrep { two_j: 1 },
                ChannelSpec::DrivenDamping {
                    g: 100.0,
                    gamma: 1.0,
                    sweep: default_sweep(),
                    assert_coefficients: CoefficientSelection::Both,
                },
                StateSpec::HighestWeight,
                TimeGrid { t_max: 5.0, samples: 51 },
            ),
        };
        Self {
            version: CONFIG_VERSION,
            scenario: name,
            representation,
            channel,
            initial_state,
            time_grid,
            output: OutputSpec::default(),
            tolerances: Tolerances::default(),
        }
    }
}

fn check_nonnegative(what: &str, x: f64) -> Result<()> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Argument(format!("{what} must be finite and nonnegative, got {x}")));
    }
    Ok(())
}
