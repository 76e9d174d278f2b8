//! Microscopic simulation of `n` qubits coupled to `K` discrete cavity modes in the
//! single-excitation sector.
//!
//! Amplitudes are propagated in the frame rotating at `omega0`: qubit amplitudes are the
//! `c_j` of the interaction picture, mode amplitudes pick up the free phase of their
//! detuning. A step is a Strang splitting `free(dt/2) . coupling(dt) . free(dt/2)`; both
//! factors are applied exactly (the coupling block through the eigen-decomposition of
//! the `n x n` Gram matrix of the coupling vectors), so the propagator is unitary and the
//! norm is conserved to rounding. Per-step cost is `O(K n + n^3)`; no Hamiltonian matrix
//! is ever formed.

use std::f64::consts::{PI, TAU};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::density::clamp_unit;
use crate::error::{argument, Error, Result};
use crate::params::{validate_beta, CouplingProfile, EnvironmentParams};
use crate::ConcurrenceSeries;

/// Allowed drift of the total norm over a run.
pub const NORM_TOL: f64 = 1e-8;

/// Default half-width of the sampled frequency window, in units of `lambda`.
pub const DEFAULT_HALF_WIDTH: f64 = 200.0;

/// Spatial profile seen by a qubit moving along the cavity axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ShapeFunction {
    /// `sin[omega_k (beta t - gamma)]`, `gamma = L / c` in units of `1 / lambda`.
    Standing { gamma: f64 },
    /// `f = 1`: every qubit sees every mode with unit amplitude.
    Uniform,
}

/// Uniform midpoint grid of `modes` frequencies on `[omega0 - half_width, omega0 + half_width]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeGrid {
    pub modes: usize,
    pub half_width: f64,
}

impl ModeGrid {
    pub fn new(modes: usize, half_width: f64) -> Result<Self> {
        if modes < 2 {
            return argument(format!("mode grid needs K >= 2, got {modes}"));
        }
        if !(half_width > 0.0) || !half_width.is_finite() {
            return argument(format!("window half-width must be positive, got {half_width}"));
        }
        Ok(ModeGrid { modes, half_width })
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.modes as f64
    }

    pub fn detunings(&self) -> Vec<f64> {
        let h = self.spacing();
        (0..self.modes).map(|k| -self.half_width + (k as f64 + 0.5) * h).collect()
    }

    /// Revival time `2 pi / spacing` of the discretized reservoir; results are only
    /// meaningful on windows shorter than this.
    pub fn recurrence_time(&self) -> f64 {
        TAU / self.spacing()
    }

    /// Transit time standing in for the continuum limit: at least `1e3 * t_max`, and
    /// tuned so that `2 gamma * spacing = pi (mod 2 pi)`. The counter-propagating term of
    /// the sine product then alternates in sign from mode to mode and cancels in the sum
    /// instead of producing a spurious echo inside the simulated window.
    pub fn continuum_gamma(&self, t_max: f64) -> f64 {
        let period = TAU / self.spacing();
        let m = ((1e3 * t_max.max(1.0)) / period - 0.25).ceil().max(0.0);
        (m + 0.25) * period
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteModeModel {
    /// Qubit frequency in units of `lambda`.
    pub omega0: f64,
    /// `omega_k - omega0` in units of `lambda`.
    pub detunings: Vec<f64>,
    /// Real mode couplings `g_k` in units of `lambda`.
    pub couplings: Vec<f64>,
    pub shape: ShapeFunction,
    pub betas: Vec<f64>,
    pub alphas: Vec<f64>,
    /// Lorentzian weight over the sampled window, when built from a spectral density.
    pub window_weight: Option<f64>,
    phase_offsets: Vec<f64>,
}

impl DiscreteModeModel {
    /// Lorentzian reservoir sampled on `grid`, `|g_k|^2 = J(omega_k) * spacing`.
    pub fn lorentzian(
        env: &EnvironmentParams,
        coupling: &CouplingProfile,
        betas: &[f64],
        grid: ModeGrid,
        gamma: f64,
    ) -> Result<Self> {
        env.validate()?;
        let w = env.w / env.lambda;
        let h = grid.spacing();
        let detunings = grid.detunings();
        let couplings = detunings.iter().map(|x| (w * w / PI / (x * x + 1.0) * h).sqrt()).collect();
        let window_weight = Some(w * w * 2.0 / PI * grid.half_width.atan());
        Self::assemble(
            env.omega0_over_lambda(),
            detunings,
            couplings,
            ShapeFunction::Standing { gamma },
            betas.to_vec(),
            coupling.alphas(),
            window_weight,
        )
    }

    /// Arbitrary mode set, e.g. a single resonant mode.
    pub fn custom(
        omega0: f64,
        detunings: Vec<f64>,
        couplings: Vec<f64>,
        shape: ShapeFunction,
        betas: Vec<f64>,
        alphas: Vec<f64>,
    ) -> Result<Self> {
        Self::assemble(omega0, detunings, couplings, shape, betas, alphas, None)
    }

    fn assemble(
        omega0: f64,
        detunings: Vec<f64>,
        couplings: Vec<f64>,
        shape: ShapeFunction,
        betas: Vec<f64>,
        alphas: Vec<f64>,
        window_weight: Option<f64>,
    ) -> Result<Self> {
        if detunings.is_empty() || detunings.len() != couplings.len() {
            return argument("mode detunings and couplings must be non-empty and of equal length");
        }
        if betas.is_empty() || betas.len() != alphas.len() {
            return argument("need one velocity and one coupling per qubit");
        }
        for &b in &betas {
            validate_beta(b)?;
        }
        if !(omega0 >= 0.0) {
            return argument("omega0 must be non-negative");
        }
        let phase_offsets = match shape {
            ShapeFunction::Standing { gamma } => {
                if !(gamma > 0.0) || !gamma.is_finite() {
                    return argument(format!("transit time must be positive and finite, got {gamma}"));
                }
                let base = (omega0 * gamma).rem_euclid(TAU);
                detunings.iter().map(|x| (base + (x * gamma).rem_euclid(TAU)).rem_euclid(TAU)).collect()
            }
            ShapeFunction::Uniform => vec![0.0; detunings.len()],
        };
        Ok(DiscreteModeModel { omega0, detunings, couplings, shape, betas, alphas, window_weight, phase_offsets })
    }

    pub fn modes(&self) -> usize {
        self.detunings.len()
    }

    pub fn qubits(&self) -> usize {
        self.betas.len()
    }

    /// `sum_k g_k^2`.
    pub fn total_weight(&self) -> f64 {
        self.couplings.iter().map(|g| g * g).sum()
    }

    /// Relative deviation of `sum_k g_k^2` from the Lorentzian integral over the window.
    pub fn weight_error(&self) -> Option<f64> {
        self.window_weight.map(|w| (self.total_weight() - w).abs() / w)
    }

    fn shape_at(&self, k: usize, qubit: usize, t: f64) -> f64 {
        match self.shape {
            ShapeFunction::Uniform => 1.0,
            ShapeFunction::Standing { .. } => {
                let beta = self.betas[qubit];
                ((self.omega0 * beta + self.detunings[k] * beta) * t - self.phase_offsets[k]).sin()
            }
        }
    }
}

/// Sampled qubit amplitudes; mode amplitudes are kept for the final time only.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    /// `qubits[i][j]`: amplitude of qubit `j` at `times[i]`.
    pub qubits: Vec<Vec<Complex64>>,
    pub final_modes: Vec<Complex64>,
    pub max_norm_drift: f64,
}

impl Trajectory {
    /// `sum_j w_j c_j(t)` for real weights `w_j`.
    pub fn overlap(&self, weights: &[f64]) -> Vec<Complex64> {
        self.qubits.iter().map(|c| c.iter().zip(weights).map(|(a, w)| a * w).sum()).collect()
    }
}

struct Propagator<'a> {
    model: &'a DiscreteModeModel,
    half_free: Vec<Complex64>,
    dt: f64,
    u: DMatrix<f64>,
}

impl<'a> Propagator<'a> {
    fn new(model: &'a DiscreteModeModel, dt: f64) -> Self {
        let half_free = model.detunings.iter().map(|x| Complex64::from_polar(1.0, -x * dt / 2.0)).collect();
        let u = DMatrix::zeros(model.modes(), model.qubits());
        Propagator { model, half_free, dt, u }
    }

    fn free(&self, b: &mut [Complex64]) {
        for (bk, r) in b.iter_mut().zip(&self.half_free) {
            *bk *= r;
        }
    }

    /// Exact `exp(-i V dt)` for the coupling `V` frozen at time `t`.
    fn couple(&mut self, a: &mut [Complex64], b: &mut [Complex64], t: f64) {
        let m = self.model;
        let n = m.qubits();
        for j in 0..n {
            for k in 0..m.modes() {
                self.u[(k, j)] = m.alphas[j] * m.couplings[k] * m.shape_at(k, j, t);
            }
        }
        let gram = self.u.transpose() * &self.u;
        let eig = gram.symmetric_eigen();
        let max_ev = eig.eigenvalues.iter().copied().fold(0.0, f64::max);
        if max_ev <= 0.0 {
            return;
        }
        let mut updates = Vec::with_capacity(n);
        for i in 0..n {
            let ev = eig.eigenvalues[i];
            if ev <= 1e-26 * max_ev {
                continue;
            }
            let sigma = ev.sqrt();
            let v: DVector<f64> = eig.eigenvectors.column(i).into_owned();
            let w: DVector<f64> = (&self.u * &v) / sigma;
            let va: Complex64 = v.iter().zip(a.iter()).map(|(x, y)| y * x).sum();
            let wb: Complex64 = w.iter().zip(b.iter()).map(|(x, y)| y * x).sum();
            let (s, c) = (sigma * self.dt).sin_cos();
            let i_unit = Complex64::new(0.0, 1.0);
            let new_va = va * c - i_unit * wb * s;
            let new_wb = wb * c - i_unit * va * s;
            updates.push((v, w, new_va - va, new_wb - wb));
        }
        for (v, w, da, db) in updates {
            for (aj, x) in a.iter_mut().zip(v.iter()) {
                *aj += da * x;
            }
            for (bk, x) in b.iter_mut().zip(w.iter()) {
                *bk += db * x;
            }
        }
    }
}

fn norm_sqr(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().chain(b.iter()).map(|z| z.norm_sqr()).sum()
}

/// Propagates the qubit amplitudes `init` (modes start in vacuum) up to `t_max`.
pub fn discrete_mode_simulate(
    model: &DiscreteModeModel,
    init: &[Complex64],
    t_max: f64,
    dt: f64,
) -> Result<Trajectory> {
    if init.len() != model.qubits() {
        return argument(format!("initial state has {} amplitudes for {} qubits", init.len(), model.qubits()));
    }
    let n0: f64 = init.iter().map(|z| z.norm_sqr()).sum();
    if (n0 - 1.0).abs() > 1e-12 {
        return argument(format!("initial state must be normalized, got norm {n0}"));
    }
    if !(dt > 0.0) || !(t_max >= 0.0) || !t_max.is_finite() {
        return argument("need dt > 0 and finite t_max >= 0");
    }
    let steps = (t_max / dt - 1e-9).ceil().max(0.0) as usize;
    let mut a = init.to_vec();
    let mut b = vec![Complex64::new(0.0, 0.0); model.modes()];
    let mut prop = Propagator::new(model, dt);
    let mut times = Vec::with_capacity(steps + 1);
    let mut qubits = Vec::with_capacity(steps + 1);
    times.push(0.0);
    qubits.push(a.clone());
    let mut max_norm_drift: f64 = 0.0;
    for step in 0..steps {
        let t = step as f64 * dt;
        prop.free(&mut b);
        prop.couple(&mut a, &mut b, t + 0.5 * dt);
        prop.free(&mut b);
        let drift = (norm_sqr(&a, &b) - 1.0).abs();
        max_norm_drift = max_norm_drift.max(drift);
        if !(drift <= NORM_TOL) {
            return Err(Error::Integrator {
                tau: t + dt,
                reason: format!("norm drift {drift:.3e} exceeds {NORM_TOL:e} (K = {}, dt = {dt})", model.modes()),
            });
        }
        times.push((step + 1) as f64 * dt);
        qubits.push(a.clone());
    }
    Ok(Trajectory { times, qubits, final_modes: b, max_norm_drift })
}

/// Two-qubit concurrence `2 |c1| |c2|` along a simulated run; velocities may differ.
pub fn unequal_velocity_run(
    model: &DiscreteModeModel,
    init: &[Complex64],
    t_max: f64,
    dt: f64,
) -> Result<ConcurrenceSeries> {
    if model.qubits() != 2 {
        return argument(format!("unequal-velocity run needs two qubits, got {}", model.qubits()));
    }
    let traj = discrete_mode_simulate(model, init, t_max, dt)?;
    let values = traj.qubits.iter().map(|c| clamp_unit(2.0 * c[0].norm() * c[1].norm())).collect::<Result<Vec<_>>>()?;
    Ok(ConcurrenceSeries { tau: traj.times, values, stationary: None })
}
