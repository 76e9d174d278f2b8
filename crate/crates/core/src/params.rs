//! Reservoir, motion and coupling parameters.
//!
//! All dynamics are expressed in the scaled time `tau = lambda * t`; `lambda` itself only
//! enters through the ratios `omega0 / lambda` and `R`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{argument, Result};

/// Largest velocity ratio accepted; beyond it the classical-trajectory treatment of the
/// qubit motion is not meaningful.
pub const MAX_BETA: f64 = 1e-3;

const CONSISTENCY_TOL: f64 = 1e-12;

/// Lorentzian cavity: loss rate `lambda`, qubit frequency `omega0`, reservoir coupling
/// `w`, and the dimensionless coupling ratio `r = alpha_t * w / lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvironmentParams {
    pub lambda: f64,
    pub omega0: f64,
    pub w: f64,
    pub r: f64,
}

impl EnvironmentParams {
    pub fn new(lambda: f64, omega0: f64, w: f64, r: f64) -> Result<Self> {
        let env = EnvironmentParams { lambda, omega0, w, r };
        env.validate()?;
        Ok(env)
    }

    /// Derives `r` from the collective coupling constant.
    pub fn from_coupling(lambda: f64, omega0: f64, w: f64, alpha_t: f64) -> Result<Self> {
        if !(alpha_t > 0.0) {
            return argument(format!("alpha_t must be positive, got {alpha_t}"));
        }
        Self::new(lambda, omega0, w, alpha_t * w / lambda)
    }

    /// Unit-`lambda` environment with `w = r`, i.e. collective coupling `alpha_t = 1`.
    pub fn scaled(omega0_over_lambda: f64, r: f64) -> Result<Self> {
        Self::new(1.0, omega0_over_lambda, r, r)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda > 0.0) || !self.lambda.is_finite() {
            return argument(format!("lambda must be positive, got {}", self.lambda));
        }
        if !(self.w >= 0.0) || !self.w.is_finite() {
            return argument(format!("W must be non-negative, got {}", self.w));
        }
        if !(self.omega0 >= 0.0) || !self.omega0.is_finite() {
            return argument(format!("omega0 must be non-negative, got {}", self.omega0));
        }
        if !(self.r >= 0.0) || !self.r.is_finite() {
            return argument(format!("R must be non-negative, got {}", self.r));
        }
        Ok(())
    }

    /// Checks `R = alpha_t W / lambda` to relative 1e-12.
    pub fn check_consistency(&self, alpha_t: f64) -> Result<()> {
        let expected = alpha_t * self.w / self.lambda;
        let scale = expected.abs().max(self.r.abs()).max(f64::MIN_POSITIVE);
        if (expected - self.r).abs() > CONSISTENCY_TOL * scale {
            return argument(format!("R = {} inconsistent with alpha_t W / lambda = {expected}", self.r));
        }
        Ok(())
    }

    pub fn omega0_over_lambda(&self) -> f64 {
        self.omega0 / self.lambda
    }

    /// `beta (1 + i omega0 / lambda)`, the complex velocity shift of the kernel.
    pub fn moving_shift(&self, beta: f64) -> Complex64 {
        Complex64::new(beta, beta * self.omega0_over_lambda())
    }

    pub fn y_plus(&self, beta: f64) -> Complex64 {
        Complex64::new(1.0, 0.0) + self.moving_shift(beta)
    }

    pub fn y_minus(&self, beta: f64) -> Complex64 {
        Complex64::new(1.0, 0.0) - self.moving_shift(beta)
    }
}

pub(crate) fn validate_beta(beta: f64) -> Result<()> {
    if !(0.0..MAX_BETA).contains(&beta) {
        return argument(format!("velocity ratio must lie in [0, {MAX_BETA}), got {beta}"));
    }
    Ok(())
}

/// Per-qubit velocity ratios and the cavity transit time `gamma_transit = L / c`.
///
/// `gamma_transit` is only read by the discrete-mode oracle; `f64::INFINITY` denotes the
/// continuum limit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MotionProfile {
    pub betas: Vec<f64>,
    pub gamma_transit: f64,
}

impl MotionProfile {
    pub fn new(betas: Vec<f64>, gamma_transit: f64) -> Result<Self> {
        if betas.is_empty() {
            return argument("motion profile needs at least one qubit");
        }
        for &b in &betas {
            validate_beta(b)?;
        }
        if !(gamma_transit > 0.0) {
            return argument(format!("transit time must be positive, got {gamma_transit}"));
        }
        Ok(MotionProfile { betas, gamma_transit })
    }

    /// All qubits moving with the same `beta`, continuum limit.
    pub fn uniform(n: usize, beta: f64) -> Result<Self> {
        Self::new(vec![beta; n], f64::INFINITY)
    }

    /// The shared velocity ratio; the closed-form paths require every qubit to share it.
    pub fn common_beta(&self) -> Result<f64> {
        let first = self.betas[0];
        if self.betas.iter().any(|&b| b != first) {
            return argument("closed-form dynamics require equal velocities for all qubits");
        }
        Ok(first)
    }
}

/// Collective coupling `alpha_t` and the relative strengths `r_j = alpha_j / alpha_t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CouplingProfile {
    pub alpha_t: f64,
    pub r: Vec<f64>,
}

impl CouplingProfile {
    pub fn new(alpha_t: f64, r: Vec<f64>) -> Result<Self> {
        if !(alpha_t > 0.0) {
            return argument(format!("alpha_t must be positive, got {alpha_t}"));
        }
        if r.is_empty() {
            return argument("coupling profile needs at least one qubit");
        }
        let norm: f64 = r.iter().map(|x| x * x).sum();
        if (norm - 1.0).abs() > CONSISTENCY_TOL {
            return argument(format!("relative strengths must satisfy sum r_j^2 = 1, got {norm}"));
        }
        Ok(CouplingProfile { alpha_t, r })
    }

    /// Two qubits with `r1` given and `r2 = sqrt(1 - r1^2)`.
    pub fn two_qubit(r1: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&r1) {
            return argument(format!("r1 must lie in [0, 1], got {r1}"));
        }
        Self::new(1.0, vec![r1, (1.0 - r1 * r1).sqrt()])
    }

    /// `n` equally coupled qubits, `r_j = 1 / sqrt(n)`.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 {
            return argument("symmetric coupling needs n >= 1");
        }
        Self::new(1.0, vec![1.0 / (n as f64).sqrt(); n])
    }

    pub fn is_symmetric(&self) -> bool {
        let first = self.r[0];
        self.r.iter().all(|&x| (x - first).abs() <= CONSISTENCY_TOL)
    }

    /// Per-qubit couplings `alpha_j = alpha_t r_j`.
    pub fn alphas(&self) -> Vec<f64> {
        self.r.iter().map(|x| x * self.alpha_t).collect()
    }
}
