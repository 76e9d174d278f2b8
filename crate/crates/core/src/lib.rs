//! Entanglement dynamics of qubits moving through a common lossy cavity.
//!
//! The reservoir has a Lorentzian spectral density and the qubits share one velocity, so
//! the single-excitation dynamics reduce to one survival amplitude obtained in closed
//! form from a complex cubic. Everything else (two-qubit amplitudes, Werner and
//! superposition states of `n` qubits, pairwise concurrences and their stationary values)
//! is algebra on top of it. Two numerical oracles cross-check the closed forms.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN.

pub mod cubic;
pub mod density;
pub mod error;
pub mod exec;
pub mod kernel;
pub mod multi_qubit;
pub mod oracles;
pub mod params;
pub mod survival;
pub mod sweep;
pub mod two_qubit;

pub use cubic::{solve_cubic, CubicRoots};
pub use density::{concurrence_wootters, DensityMatrix4};
pub use error::{Error, Result};
pub use exec::Execution;
pub use kernel::correlation_kernel;
pub use params::{CouplingProfile, EnvironmentParams, MotionProfile};
pub use survival::{survival_amplitude, Survival, SurvivalAmplitude};
pub use two_qubit::{InitialStateTwoQubit, TwoQubitAmplitudes};

/// Sampled concurrence on a time grid with its analytic stationary value.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ConcurrenceSeries {
    pub tau: Vec<f64>,
    pub values: Vec<f64>,
    pub stationary: Option<f64>,
}

/// `count` equally spaced points on `[0, tau_max]`.
pub fn tau_grid(tau_max: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..count).map(|i| tau_max * i as f64 / (count - 1) as f64).collect(),
    }
}
