//! `n` equally coupled, equally fast qubits.
//!
//! Every qubit couples with the same per-qubit strength `g_per`; `env.r` is read as the
//! per-qubit ratio `g_per W / lambda`, and the collective amplitude `D(tau)` is the
//! survival amplitude with `effective R^2 = n R^2`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::density::{clamp_unit, concurrence_wootters, pair_density};
use crate::error::{argument, Error, Result};
use crate::exec::Execution;
use crate::params::EnvironmentParams;
use crate::survival::Survival;
use crate::two_qubit::InitialStateTwoQubit;

/// Upper bound on `n` for time-dependent trajectories.
pub const MAX_DYNAMIC_QUBITS: usize = 32;
/// Upper bound on `n` for stationary tables.
pub const MAX_TABLE_QUBITS: usize = 1_000_000;

const FALLBACK_HORIZON: f64 = 500.0;
const NORM_TOL: f64 = 1e-9;

fn check_dynamic_n(n: usize, min: usize) -> Result<()> {
    if n < min {
        return argument(format!("need n >= {min}, got {n}"));
    }
    if n > MAX_DYNAMIC_QUBITS {
        return argument(format!("dynamic trajectories are limited to n <= {MAX_DYNAMIC_QUBITS}"));
    }
    Ok(())
}

/// `D(tau)` for the `n`-qubit problem: `E(tau)` with `R -> sqrt(n) R`.
pub fn werner_survival(n: usize, env: &EnvironmentParams, beta: f64) -> Result<Survival> {
    if n == 0 {
        return argument("werner survival needs n >= 1");
    }
    Survival::build(env, beta, n as f64 * env.r * env.r, FALLBACK_HORIZON)
}

/// `C_pair = 2 |D|^2 / n`.
pub fn werner_pair_concurrence(n: usize, d_value: Complex64) -> Result<f64> {
    if n < 2 {
        return argument(format!("pairwise concurrence needs n >= 2, got {n}"));
    }
    if d_value.norm() > 1.0 + NORM_TOL {
        return Err(Error::State(format!("|D| = {} exceeds one", d_value.norm())));
    }
    clamp_unit(2.0 * d_value.norm_sqr() / n as f64)
}

/// Equal superposition of all single excitations decaying through `D(tau)`.
#[derive(Debug, Clone)]
pub struct WernerScenario {
    pub n: usize,
    pub env: EnvironmentParams,
    pub beta: f64,
    pub d_amp: Survival,
}

impl WernerScenario {
    pub fn new(n: usize, env: EnvironmentParams, beta: f64) -> Result<Self> {
        check_dynamic_n(n, 2)?;
        Ok(WernerScenario { n, env, beta, d_amp: werner_survival(n, &env, beta)? })
    }

    pub fn pair_concurrence_at(&self, tau: f64) -> Result<f64> {
        werner_pair_concurrence(self.n, self.d_amp.eval(tau))
    }

    /// Each qubit carries `D / sqrt(n)`.
    pub fn qubit_amplitudes(&self, tau: f64) -> Vec<Complex64> {
        let a = self.d_amp.eval(tau) / (self.n as f64).sqrt();
        vec![a; self.n]
    }
}

/// `(C1, C2, C3)`: amplitudes of `|e_j>`, `|e_l>` and the normalized symmetric state of
/// the remaining `n - 2` qubits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuperpositionAmplitudes {
    pub c1: Complex64,
    pub c2: Complex64,
    pub c3: Complex64,
}

/// `C1 = [(n-1) c01 - c02]/n + (c01 + c02) D / n`, `C2` symmetric,
/// `C3 = sqrt(n-2)/n (c01 + c02)(D - 1)`.
pub fn superposition_amplitudes(
    n: usize,
    init: &InitialStateTwoQubit,
    d_value: Complex64,
) -> Result<SuperpositionAmplitudes> {
    if n < 2 {
        return argument(format!("superposition state needs n >= 2, got {n}"));
    }
    let nf = n as f64;
    let (a, b) = (init.c01, init.c02);
    let bright = (a + b) / nf;
    Ok(SuperpositionAmplitudes {
        c1: (a * (nf - 1.0) - b) / nf + bright * d_value,
        c2: (b * (nf - 1.0) - a) / nf + bright * d_value,
        c3: (a + b) * ((nf - 2.0).sqrt() / nf) * (d_value - 1.0),
    })
}

impl SuperpositionAmplitudes {
    /// Per-qubit amplitudes: qubit 0 is `j`, qubit 1 is `l`, the rest share `C3`.
    pub fn per_qubit(&self, n: usize) -> Vec<Complex64> {
        let mut v = vec![self.c1, self.c2];
        if n > 2 {
            let m = self.c3 / ((n - 2) as f64).sqrt();
            v.extend(std::iter::repeat_n(m, n - 2));
        }
        v
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c1.norm_sqr() + self.c2.norm_sqr() + self.c3.norm_sqr()
    }
}

/// `C_{j,l} = 2 |C1| |C2|`.
pub fn concurrence_jl(c1: Complex64, c2: Complex64) -> f64 {
    (2.0 * c1.norm() * c2.norm()).clamp(0.0, 1.0)
}

/// `C_{j,m} = 2 |C1| |C3| / sqrt(n - 2)`, `n > 2`.
pub fn concurrence_jm(n: usize, c1: Complex64, c3: Complex64) -> Result<f64> {
    if n <= 2 {
        return argument(format!("C_jm is defined for n > 2, got {n}"));
    }
    clamp_unit(2.0 * c1.norm() * c3.norm() / ((n - 2) as f64).sqrt())
}

/// `C_{k,m} = 2 |C3|^2 / (n - 2)`, `n > 2`.
pub fn concurrence_km(n: usize, c3: Complex64) -> Result<f64> {
    if n <= 2 {
        return argument(format!("C_km is defined for n > 2, got {n}"));
    }
    clamp_unit(2.0 * c3.norm_sqr() / (n - 2) as f64)
}

/// Which initial excitation pattern a stationary result refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    /// Qubits `j`, `l` share one excitation with the `(s, phi)` amplitudes.
    TwoExcitationSuperposition,
    /// Only qubit `j` excited (`s = -1`).
    OneExcitation,
}

impl Scenario {
    pub fn columns(self) -> &'static [&'static str] {
        match self {
            Scenario::TwoExcitationSuperposition => &["C_jl", "C_jm", "C_km"],
            Scenario::OneExcitation => &["C_lm", "C_km"],
        }
    }

    fn initial_state(self, init: &InitialStateTwoQubit) -> InitialStateTwoQubit {
        match self {
            Scenario::TwoExcitationSuperposition => *init,
            Scenario::OneExcitation => InitialStateTwoQubit::one_excitation(),
        }
    }
}

/// Superposition of one excitation shared by qubits `j` and `l`.
#[derive(Debug, Clone)]
pub struct SuperpositionScenario {
    pub n: usize,
    pub init: InitialStateTwoQubit,
    pub d_amp: Survival,
}

impl SuperpositionScenario {
    pub fn new(n: usize, env: EnvironmentParams, beta: f64, init: InitialStateTwoQubit) -> Result<Self> {
        check_dynamic_n(n, 2)?;
        Ok(SuperpositionScenario { n, init, d_amp: werner_survival(n, &env, beta)? })
    }

    pub fn amplitudes_at(&self, tau: f64) -> Result<SuperpositionAmplitudes> {
        if tau == 0.0 {
            return Ok(SuperpositionAmplitudes { c1: self.init.c01, c2: self.init.c02, c3: Complex64::new(0.0, 0.0) });
        }
        superposition_amplitudes(self.n, &self.init, self.d_amp.eval(tau))
    }

    pub fn jl_at(&self, tau: f64) -> Result<f64> {
        let a = self.amplitudes_at(tau)?;
        Ok(concurrence_jl(a.c1, a.c2))
    }

    pub fn jm_at(&self, tau: f64) -> Result<f64> {
        let a = self.amplitudes_at(tau)?;
        concurrence_jm(self.n, a.c1, a.c3)
    }

    pub fn km_at(&self, tau: f64) -> Result<f64> {
        let a = self.amplitudes_at(tau)?;
        concurrence_km(self.n, a.c3)
    }

    /// Concurrence of an arbitrary pair via the reduced density matrix and Wootters.
    pub fn pair_wootters_at(&self, tau: f64, a: usize, b: usize) -> Result<f64> {
        let amps = self.amplitudes_at(tau)?.per_qubit(self.n);
        concurrence_wootters(&pair_density(&amps, a, b)?)
    }
}

/// One row of stationary values; `None` where a formula needs `n > 2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StationaryRow {
    pub n: usize,
    pub cells: Vec<Option<f64>>,
}

fn stationary_row(n: usize, scenario: Scenario, init: &InitialStateTwoQubit) -> Result<StationaryRow> {
    let init = scenario.initial_state(init);
    let a = superposition_amplitudes(n, &init, Complex64::new(0.0, 0.0))?;
    let km = if n > 2 { Some(concurrence_km(n, a.c3)?) } else { None };
    let cells = match scenario {
        Scenario::TwoExcitationSuperposition => {
            let jm = if n > 2 { Some(concurrence_jm(n, a.c1, a.c3)?) } else { None };
            vec![Some(concurrence_jl(a.c1, a.c2)), jm, km]
        }
        // The excited qubit pairs identically with qubit l and with any m.
        Scenario::OneExcitation => vec![Some(concurrence_jl(a.c1, a.c2)), km],
    };
    Ok(StationaryRow { n, cells })
}

/// Stationary pairwise concurrences for every `n` in `n_values`.
pub fn stationary_table(
    n_values: &[usize],
    scenario: Scenario,
    init: &InitialStateTwoQubit,
    exec: Execution,
) -> Result<Vec<StationaryRow>> {
    if n_values.is_empty() {
        return argument("stationary table needs a non-empty range of n");
    }
    if let Some(&bad) = n_values.iter().find(|&&n| !(2..=MAX_TABLE_QUBITS).contains(&n)) {
        return argument(format!("n must lie in [2, {MAX_TABLE_QUBITS}], got {bad}"));
    }
    exec.try_map(n_values, |&n| stationary_row(n, scenario, init))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub weight: f64,
}

/// Complete graph on the qubits weighted by stationary pairwise concurrence.
/// Node 0 is qubit `j`, node 1 is qubit `l`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedGraph {
    pub n: usize,
    pub edges: Vec<Edge>,
}

impl WeightedGraph {
    pub fn weight(&self, a: usize, b: usize) -> Option<f64> {
        let (a, b) = (a.min(b), a.max(b));
        self.edges.iter().find(|e| e.a == a && e.b == b).map(|e| e.weight)
    }

    /// Distinct edge weights (merged within 1e-12), descending.
    pub fn weight_classes(&self) -> Vec<f64> {
        let mut w: Vec<f64> = self.edges.iter().map(|e| e.weight).collect();
        w.sort_by(|a, b| b.total_cmp(a));
        w.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);
        w
    }
}

pub fn stationary_graph(n: usize, scenario: Scenario, init: &InitialStateTwoQubit) -> Result<WeightedGraph> {
    if n < 3 {
        return argument(format!("stationary graph needs n >= 3, got {n}"));
    }
    check_dynamic_n(n, 3)?;
    let init = scenario.initial_state(init);
    let amps = superposition_amplitudes(n, &init, Complex64::new(0.0, 0.0))?.per_qubit(n);
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for a in 0..n {
        for b in a + 1..n {
            edges.push(Edge { a, b, weight: concurrence_jl(amps[a], amps[b]) });
        }
    }
    Ok(WeightedGraph { n, edges })
}
