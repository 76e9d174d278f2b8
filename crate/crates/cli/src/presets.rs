//! Named parameter sets, one per plotted panel.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use moving_qubits::multi_qubit::Scenario;

use crate::config::{Pair, RunConfig, ScenarioKind};
use crate::error::{usage, Result};

pub const PRESET_IDS: [&str; 26] = [
    "fig2a", "fig2b", "fig3a", "fig3b", "fig3c", "fig3d", "fig4a", "fig4b", "fig5a", "fig5b", "fig6a", "fig6b",
    "fig7a", "fig7b", "fig8a", "fig8b", "fig9a", "fig9b", "fig10a", "fig10b", "fig11a", "fig11b", "fig12a", "fig12b",
    "fig13a", "fig13b",
];

/// Parameter distinguishing the curves of one panel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Vary {
    Beta,
    R1,
    N,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PresetKind {
    /// Concurrence against `tau`, one column per curve.
    Curves { configs: Vec<RunConfig>, vary: Vary },
    /// Stationary concurrence over the `(r1, s)` plane.
    Surface { phi: f64, grid: usize },
    /// Stationary pairwise concurrences as a weighted graph.
    Graph { scenario: Scenario, n: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigurePreset {
    pub id: &'static str,
    pub caption: &'static str,
    pub kind: PresetKind,
}

fn base(scenario: ScenarioKind, r: f64) -> RunConfig {
    let mut c = RunConfig::new(scenario);
    c.r = r;
    // Bad-cavity decay is slow; good-cavity transients are over within a few units.
    c.tau_max = if r < 1.0 { 100.0 } else { 10.0 };
    c.tau_steps = 1001;
    c
}

fn velocity_panel(mut c: RunConfig) -> PresetKind {
    c.betas = crate::config::DEFAULT_BETAS.to_vec();
    PresetKind::Curves { configs: vec![c], vary: Vary::Beta }
}

fn vary_r1(c: RunConfig, values: &[f64]) -> PresetKind {
    let configs = values.iter().map(|&r1| RunConfig { r1, betas: vec![0.0], ..c.clone() }).collect();
    PresetKind::Curves { configs, vary: Vary::R1 }
}

fn vary_n(c: RunConfig, values: &[usize]) -> PresetKind {
    let configs = values.iter().map(|&n| RunConfig { n, betas: vec![0.0], ..c.clone() }).collect();
    PresetKind::Curves { configs, vary: Vary::N }
}

fn two_qubit(r: f64, s: f64) -> RunConfig {
    RunConfig { s, r1: 0.87, ..base(ScenarioKind::TwoQubit, r) }
}

fn multi(scenario: ScenarioKind, r: f64, n: usize, pair: Pair) -> RunConfig {
    RunConfig { n, pair: Some(pair), ..base(scenario, r) }
}

fn r_of(panel: char) -> f64 {
    if panel == 'a' {
        0.1
    } else {
        10.0
    }
}

/// Looks up a preset; unknown ids are a usage error listing the valid ones.
pub fn preset(id: &str) -> Result<FigurePreset> {
    let Some(&id) = PRESET_IDS.iter().find(|&&p| p == id) else {
        return usage(format!("unknown preset '{id}'; valid ids: {}", PRESET_IDS.join(", ")));
    };
    let panel = id.chars().last().unwrap_or('a');
    let r = r_of(panel);
    let sup = ScenarioKind::Superposition;
    let (caption, kind) = match &id[..id.len() - 1] {
        "fig2" => (
            "stationary two-qubit concurrence over (r1, s)",
            PresetKind::Surface { phi: if panel == 'a' { 0.0 } else { PI }, grid: 101 },
        ),
        "fig3" => {
            let r = if matches!(panel, 'a' | 'b') { 0.1 } else { 10.0 };
            let s = if matches!(panel, 'a' | 'c') { 1.0 } else { 0.0 };
            let c = RunConfig { betas: vec![0.0], ..two_qubit(r, s) };
            ("motionless qubits, phi = 0, r1 in {0.87, 1/sqrt(2), 0}", vary_r1(c, &[0.87, FRAC_1_SQRT_2, 0.0]))
        }
        "fig4" => (
            "bad cavity R = 0.1, r1 = 0.87, omega0/lambda = 1.5e9, beta in {0, 2e-9, 4e-9}",
            velocity_panel(two_qubit(0.1, if panel == 'a' { 0.0 } else { 1.0 })),
        ),
        "fig5" => (
            "good cavity R = 10, r1 = 0.87, omega0/lambda = 1.5e9, beta in {0, 2e-9, 4e-9}",
            velocity_panel(two_qubit(10.0, if panel == 'a' { 0.0 } else { 1.0 })),
        ),
        "fig6" => ("Werner state pair concurrence, n in {2, 4, 8}", vary_n(base(ScenarioKind::Werner, r), &[2, 4, 8])),
        "fig7" => (
            "Werner state pair concurrence, n = 4, beta in {0, 2e-9, 4e-9}",
            velocity_panel(RunConfig { n: 4, ..base(ScenarioKind::Werner, r) }),
        ),
        "fig8" => ("C_jl for s = phi = 0, beta = 0, n in {2, 6, 12}", vary_n(multi(sup, r, 2, Pair::Jl), &[2, 6, 12])),
        "fig9" => ("C_jl, n = 6, beta in {0, 2e-9, 4e-9}", velocity_panel(multi(sup, r, 6, Pair::Jl))),
        "fig10" => ("C_jm, n = 6, beta in {0, 2e-9, 4e-9}", velocity_panel(multi(sup, r, 6, Pair::Jm))),
        "fig11" => ("C_km, n = 4, beta in {0, 2e-9, 4e-9}", velocity_panel(multi(sup, r, 4, Pair::Km))),
        "fig12" => (
            "C_lm, n = 4, s = -1 (one excitation), beta in {0, 2e-9, 4e-9}",
            velocity_panel(RunConfig { s: -1.0, ..multi(ScenarioKind::OneExcitation, r, 4, Pair::Lm) }),
        ),
        "fig13" if panel == 'a' => (
            "leading stationary concurrences, excitation shared by j and l (s = phi = 0), n = 6",
            PresetKind::Graph { scenario: Scenario::TwoExcitationSuperposition, n: 6 },
        ),
        "fig13" => (
            "leading stationary concurrences, one excited qubit, n = 5 (star graph)",
            PresetKind::Graph { scenario: Scenario::OneExcitation, n: 5 },
        ),
        other => unreachable!("preset table out of sync for {other}"),
    };
    Ok(FigurePreset { id, caption, kind })
}
