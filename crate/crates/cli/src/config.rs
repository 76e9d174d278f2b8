//! Run configuration shared by every subcommand.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use moving_qubits::oracles::DEFAULT_HALF_WIDTH;
use moving_qubits::params::MAX_BETA;
use moving_qubits::{EnvironmentParams, InitialStateTwoQubit};
use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};

pub const DEFAULT_OMEGA0_OVER_LAMBDA: f64 = 1.5e9;
pub const DEFAULT_BETAS: [f64; 3] = [0.0, 2e-9, 4e-9];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioKind {
    TwoQubit,
    Werner,
    Superposition,
    OneExcitation,
    OracleCompare,
}

/// Qubit pair whose concurrence is reported in the multi-qubit scenarios. `j` and `l`
/// carry the initial excitation, `k` and `m` start in the ground state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Pair {
    #[default]
    Jl,
    Jm,
    Km,
    Lm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Oracle {
    #[default]
    Volterra,
    Discrete,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub scenario: ScenarioKind,
    #[serde(default = "defaults::n")]
    pub n: usize,
    #[serde(default = "defaults::r1")]
    pub r1: f64,
    #[serde(default)]
    pub s: f64,
    #[serde(default)]
    pub phi: f64,
    #[serde(rename = "R", default = "defaults::r")]
    pub r: f64,
    #[serde(default = "defaults::betas")]
    pub betas: Vec<f64>,
    #[serde(default = "defaults::omega0")]
    pub omega0_over_lambda: f64,
    #[serde(default = "defaults::tau_max")]
    pub tau_max: f64,
    #[serde(default = "defaults::tau_steps")]
    pub tau_steps: usize,
    /// Defaults to `lm` for the one-excitation scenario and `jl` otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<Pair>,
    #[serde(default)]
    pub oracle: Oracle,
    /// Step of the numerical oracle.
    #[serde(default = "defaults::oracle_dt")]
    pub oracle_dt: f64,
    #[serde(default = "defaults::modes")]
    pub modes: usize,
    #[serde(default = "defaults::half_width")]
    pub half_width: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

mod defaults {
    pub fn n() -> usize {
        2
    }
    pub fn r1() -> f64 {
        0.87
    }
    pub fn r() -> f64 {
        0.1
    }
    pub fn betas() -> Vec<f64> {
        super::DEFAULT_BETAS.to_vec()
    }
    pub fn omega0() -> f64 {
        super::DEFAULT_OMEGA0_OVER_LAMBDA
    }
    pub fn tau_max() -> f64 {
        50.0
    }
    pub fn tau_steps() -> usize {
        501
    }
    pub fn oracle_dt() -> f64 {
        0.005
    }
    pub fn modes() -> usize {
        4096
    }
    pub fn half_width() -> f64 {
        super::DEFAULT_HALF_WIDTH
    }
}

impl RunConfig {
    pub fn new(scenario: ScenarioKind) -> Self {
        RunConfig {
            scenario,
            n: defaults::n(),
            r1: defaults::r1(),
            s: 0.0,
            phi: 0.0,
            r: defaults::r(),
            betas: defaults::betas(),
            omega0_over_lambda: defaults::omega0(),
            tau_max: defaults::tau_max(),
            tau_steps: defaults::tau_steps(),
            pair: None,
            oracle: Oracle::default(),
            oracle_dt: defaults::oracle_dt(),
            modes: defaults::modes(),
            half_width: defaults::half_width(),
            out: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Compact JSON; the output-path field is left out so that artifacts do not depend on
    /// where they were written.
    pub fn to_json(&self) -> String {
        let echo = RunConfig { out: None, ..self.clone() };
        serde_json::to_string(&echo).expect("config serializes")
    }

    pub fn env(&self) -> Result<EnvironmentParams> {
        Ok(EnvironmentParams::scaled(self.omega0_over_lambda, self.r)?)
    }

    /// Initial state, with `s = -1` imposed for the one-excitation scenario.
    pub fn init(&self) -> Result<InitialStateTwoQubit> {
        match self.scenario {
            ScenarioKind::OneExcitation => Ok(InitialStateTwoQubit::one_excitation()),
            _ => Ok(InitialStateTwoQubit::new(self.s, self.phi)?),
        }
    }

    pub fn pair(&self) -> Pair {
        match (self.pair, self.scenario) {
            (Some(p), _) => p,
            (None, ScenarioKind::OneExcitation) => Pair::Lm,
            (None, _) => Pair::Jl,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.tau_steps < 2 {
            return usage(format!("tau_steps must be at least 2, got {}", self.tau_steps));
        }
        if !(self.tau_max > 0.0) || !self.tau_max.is_finite() {
            return usage(format!("tau_max must be positive and finite, got {}", self.tau_max));
        }
        if self.betas.is_empty() {
            return usage("need at least one velocity in betas");
        }
        if let Some(b) = self.betas.iter().find(|b| !(0.0..MAX_BETA).contains(*b)) {
            return usage(format!("beta must lie in [0, {MAX_BETA}), got {b}"));
        }
        if !(0.0..=1.0).contains(&self.r1) {
            return usage(format!("r1 must lie in [0, 1], got {}", self.r1));
        }
        if !(self.oracle_dt > 0.0) {
            return usage(format!("oracle_dt must be positive, got {}", self.oracle_dt));
        }
        self.env()?;
        self.init()?;
        match self.scenario {
            ScenarioKind::Werner if self.n < 1 => usage("werner scenario needs n >= 1"),
            ScenarioKind::Superposition | ScenarioKind::OneExcitation => {
                let one = self.scenario == ScenarioKind::OneExcitation;
                let min = match self.pair() {
                    Pair::Jl | Pair::Jm if one => {
                        return usage("one-excitation pairs are lm (excited with ground) and km (two ground qubits)");
                    }
                    Pair::Jl => 2,
                    Pair::Lm if one => 2,
                    Pair::Jm | Pair::Lm => 3,
                    Pair::Km => 4,
                };
                if self.n < min {
                    return usage(format!("pair {:?} needs n >= {min}, got {}", self.pair(), self.n));
                }
                if self.n > moving_qubits::multi_qubit::MAX_DYNAMIC_QUBITS {
                    return usage(format!(
                        "dynamic runs support n <= {}",
                        moving_qubits::multi_qubit::MAX_DYNAMIC_QUBITS
                    ));
                }
                Ok(())
            }
            ScenarioKind::TwoQubit | ScenarioKind::OracleCompare if self.n != 2 => {
                usage(format!("{:?} scenario is defined for n = 2, got {}", self.scenario, self.n))
            }
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_fill_missing_fields() {
        let cfg = RunConfig::from_json(r#"{"scenario": "two-qubit"}"#).unwrap();
        assert_eq!(cfg, RunConfig::new(ScenarioKind::TwoQubit));
        assert_eq!(cfg.betas, vec![0.0, 2e-9, 4e-9]);
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(RunConfig::from_json(r#"{"scenario":"two-qubit","tau_steps":1}"#).is_err());
        assert!(RunConfig::from_json(r#"{"scenario":"two-qubit","s":1.5}"#).is_err());
        assert!(RunConfig::from_json(r#"{"scenario":"two-qubit","R":-1}"#).is_err());
        assert!(RunConfig::from_json(r#"{"scenario":"two-qubit","betas":[0.5]}"#).is_err());
        assert!(RunConfig::from_json(r#"{"scenario":"two-qubit","bogus":1}"#).is_err());
        assert!(RunConfig::from_json(r#"{"scenario":"superposition","n":3,"pair":"km"}"#).is_err());
        assert!(RunConfig::from_json(r#"{"scenario":"nope"}"#).is_err());
        assert!(RunConfig::from_json(r#"{"scenario":"one-excitation","n":4,"pair":"jl"}"#).is_err());
        assert_eq!(RunConfig::from_json(r#"{"scenario":"one-excitation","n":4}"#).unwrap().pair(), Pair::Lm);
    }

    #[test]
    fn json_round_trip_is_exact() {
        let mut cfg = RunConfig::new(ScenarioKind::Superposition);
        cfg.r1 = std::f64::consts::FRAC_1_SQRT_2;
        cfg.phi = std::f64::consts::PI;
        cfg.n = 6;
        assert_eq!(RunConfig::from_json(&cfg.to_json()).unwrap(), cfg);
    }
}
