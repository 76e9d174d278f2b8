//! Closed-form survival amplitude `E(tau) = sum_i A_i exp(q_i tau)` from the residues of
//! the Laplace-domain solution.

use num_complex::Complex64;

use crate::cubic::{solve_cubic, CubicRoots};
use crate::error::{Error, Result};
use crate::oracles::volterra::{solve_survival, Quadrature, VolterraConfig, VolterraSolution};
use crate::params::EnvironmentParams;

/// Relative separation below which the residue formula is not trusted.
pub const DEGENERACY_TOL: f64 = 1e-8;

/// Decay-time multiplier for the stationary horizon; `exp(-18) ~ 1.5e-8`.
pub const STATIONARY_FACTOR: f64 = 18.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurvivalAmplitude {
    pub roots: CubicRoots,
    pub residues: [Complex64; 3],
    pub y_plus: Complex64,
    pub y_minus: Complex64,
}

/// Builds the residue expansion for already-solved roots.
pub fn survival_amplitude(roots: &CubicRoots, y_plus: Complex64, y_minus: Complex64) -> Result<SurvivalAmplitude> {
    let q = roots.as_array();
    let scale = q.iter().map(|x| x.norm()).fold(1.0, f64::max);
    if !(roots.min_separation > DEGENERACY_TOL * scale) {
        return Err(Error::DegenerateRoots { separation: roots.min_separation });
    }
    let mut residues = [Complex64::new(0.0, 0.0); 3];
    for i in 0..3 {
        let mut den = Complex64::new(1.0, 0.0);
        for j in 0..3 {
            if j != i {
                den *= q[i] - q[j];
            }
        }
        residues[i] = (q[i] + y_plus) * (q[i] + y_minus) / den;
    }
    Ok(SurvivalAmplitude { roots: *roots, residues, y_plus, y_minus })
}

impl SurvivalAmplitude {
    pub fn eval(&self, tau: f64) -> Complex64 {
        self.roots.as_array().iter().zip(self.residues.iter()).map(|(q, a)| a * (q * tau).exp()).sum()
    }

    pub fn derivative(&self, tau: f64) -> Complex64 {
        self.roots.as_array().iter().zip(self.residues.iter()).map(|(q, a)| a * q * (q * tau).exp()).sum()
    }

    /// `sum_i A_i`, equal to `E(0)`.
    pub fn residue_sum(&self) -> Complex64 {
        self.residues.iter().sum()
    }

    /// `sum_i A_i q_i`, equal to `dE/dtau` at `tau = 0`.
    pub fn first_moment(&self) -> Complex64 {
        self.derivative(0.0)
    }

    /// Slowest decay rate among roots with a non-negligible residue.
    pub fn slowest_rate(&self) -> f64 {
        self.roots
            .as_array()
            .iter()
            .zip(self.residues.iter())
            .filter(|(_, a)| a.norm() > 1e-14)
            .map(|(q, _)| -q.re)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Survival amplitude with the special cases resolved.
#[derive(Debug, Clone, PartialEq)]
pub enum Survival {
    /// No coupling: `E = 1` for all times.
    Uncoupled,
    ClosedForm(SurvivalAmplitude),
    /// Degenerate roots; sampled Volterra solution valid on `[0, horizon]`.
    Sampled(VolterraSolution),
}

/// Step used for the Volterra fallback on degenerate parameter points.
pub const FALLBACK_DT: f64 = 0.005;

impl Survival {
    /// Closed form when possible. On degenerate roots the Volterra solver is run up to
    /// `fallback_horizon`.
    pub fn build(env: &EnvironmentParams, beta: f64, effective_r2: f64, fallback_horizon: f64) -> Result<Self> {
        let roots = solve_cubic(env, beta, effective_r2)?;
        if effective_r2 == 0.0 {
            return Ok(Survival::Uncoupled);
        }
        match survival_amplitude(&roots, env.y_plus(beta), env.y_minus(beta)) {
            Ok(s) => Ok(Survival::ClosedForm(s)),
            Err(Error::DegenerateRoots { .. }) => {
                let cfg = VolterraConfig::new(FALLBACK_DT, fallback_horizon, Quadrature::Gregory)?;
                Ok(Survival::Sampled(solve_survival(env, beta, effective_r2, &cfg)?))
            }
            Err(e) => Err(e),
        }
    }

    pub fn eval(&self, tau: f64) -> Complex64 {
        match self {
            Survival::Uncoupled => Complex64::new(1.0, 0.0),
            Survival::ClosedForm(s) => s.eval(tau),
            Survival::Sampled(v) => v.at(tau),
        }
    }

    /// Time after which `|E|` has dropped below ~1e-8; `None` when it never decays or the
    /// horizon is bounded by a sampled solution.
    pub fn stationary_time(&self) -> Option<f64> {
        match self {
            Survival::ClosedForm(s) => {
                let rate = s.slowest_rate();
                (rate > 0.0 && rate.is_finite()).then(|| STATIONARY_FACTOR / rate)
            }
            _ => None,
        }
    }

    pub fn closed_form(&self) -> Option<&SurvivalAmplitude> {
        match self {
            Survival::ClosedForm(s) => Some(s),
            _ => None,
        }
    }
}
