//! Two equally fast qubits in the common cavity.
//!
//! The subradiant combination `r2 |e,g> - r1 |g,e>` decouples from the reservoir; only its
//! superradiant partner decays, with amplitude `E(tau)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::density::{clamp_unit, concurrence_wootters, DensityMatrix4};
use crate::error::{argument, Result};
use crate::exec::Execution;
use crate::params::{CouplingProfile, EnvironmentParams};
use crate::survival::Survival;
use crate::ConcurrenceSeries;

/// `c01 |e,g> + c02 |g,e>` with `c01 = sqrt((1-s)/2)`, `c02 = sqrt((1+s)/2) e^{i phi}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InitialStateTwoQubit {
    pub s: f64,
    pub phi: f64,
    pub c01: Complex64,
    pub c02: Complex64,
}

/// Projections onto the super- and subradiant states for a given coupling split.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Projections {
    pub proj_plus: Complex64,
    pub proj_minus: Complex64,
}

impl InitialStateTwoQubit {
    pub fn new(s: f64, phi: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&s) {
            return argument(format!("separability parameter must lie in [-1, 1], got {s}"));
        }
        if !phi.is_finite() {
            return argument("phase must be finite");
        }
        let c01 = Complex64::new(((1.0 - s) / 2.0).sqrt(), 0.0);
        let c02 = Complex64::from_polar(((1.0 + s) / 2.0).sqrt(), phi);
        Ok(InitialStateTwoQubit { s, phi, c01, c02 })
    }

    /// Only the first qubit excited (`s = -1`).
    pub fn one_excitation() -> Self {
        Self::new(-1.0, 0.0).expect("s = -1 is valid")
    }

    pub fn initial_concurrence(&self) -> f64 {
        2.0 * self.c01.norm() * self.c02.norm()
    }

    /// `proj_plus = r1 c01 + r2 c02`, `proj_minus = r2 c01 - r1 c02`.
    pub fn projections(&self, r1: f64, r2: f64) -> Projections {
        Projections { proj_plus: self.c01 * r1 + self.c02 * r2, proj_minus: self.c01 * r2 - self.c02 * r1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoQubitAmplitudes {
    pub c1: Complex64,
    pub c2: Complex64,
}

fn two_strengths(coupling: &CouplingProfile) -> Result<(f64, f64)> {
    match coupling.r.as_slice() {
        [r1, r2] => Ok((*r1, *r2)),
        other => argument(format!("two-qubit dynamics need exactly two couplings, got {}", other.len())),
    }
}

/// `c1 = r2 proj_minus + r1 E proj_plus`, `c2 = -r1 proj_minus + r2 E proj_plus`.
pub fn amplitudes_at(
    tau: f64,
    coupling: &CouplingProfile,
    init: &InitialStateTwoQubit,
    surv: &Survival,
) -> Result<TwoQubitAmplitudes> {
    if !(tau >= 0.0) {
        return argument(format!("tau must be non-negative, got {tau}"));
    }
    let (r1, r2) = two_strengths(coupling)?;
    if tau == 0.0 {
        return Ok(TwoQubitAmplitudes { c1: init.c01, c2: init.c02 });
    }
    Ok(amplitudes_from_survival(r1, r2, init, surv.eval(tau)))
}

pub(crate) fn amplitudes_from_survival(
    r1: f64,
    r2: f64,
    init: &InitialStateTwoQubit,
    e: Complex64,
) -> TwoQubitAmplitudes {
    let p = init.projections(r1, r2);
    TwoQubitAmplitudes { c1: p.proj_minus * r2 + e * p.proj_plus * r1, c2: -p.proj_minus * r1 + e * p.proj_plus * r2 }
}

pub fn density_matrix(amps: &TwoQubitAmplitudes) -> Result<DensityMatrix4> {
    DensityMatrix4::from_amplitudes(amps.c1, amps.c2)
}

/// `2 |c1 c2^*|`.
pub fn concurrence_closed(amps: &TwoQubitAmplitudes) -> f64 {
    (2.0 * amps.c1.norm() * amps.c2.norm()).clamp(0.0, 1.0)
}

/// `2 |r1 r2| |proj_minus|^2`, independent of velocity and reservoir.
pub fn stationary_concurrence(r1: f64, init: &InitialStateTwoQubit) -> Result<f64> {
    if !(0.0..=1.0).contains(&r1) {
        return argument(format!("r1 must lie in [0, 1], got {r1}"));
    }
    let r2 = (1.0 - r1 * r1).sqrt();
    let p = init.projections(r1, r2);
    clamp_unit(2.0 * (r1 * r2).abs() * p.proj_minus.norm_sqr())
}

/// Bundled two-qubit scenario.
#[derive(Debug, Clone)]
pub struct TwoQubitSystem {
    pub env: EnvironmentParams,
    pub beta: f64,
    pub coupling: CouplingProfile,
    pub init: InitialStateTwoQubit,
    pub survival: Survival,
}

impl TwoQubitSystem {
    /// `env.r` is the collective ratio `alpha_t W / lambda`.
    pub fn new(env: EnvironmentParams, beta: f64, r1: f64, init: InitialStateTwoQubit, horizon: f64) -> Result<Self> {
        let coupling = CouplingProfile::two_qubit(r1)?;
        let survival = Survival::build(&env, beta, env.r * env.r, horizon)?;
        Ok(TwoQubitSystem { env, beta, coupling, init, survival })
    }

    pub fn amplitudes_at(&self, tau: f64) -> Result<TwoQubitAmplitudes> {
        amplitudes_at(tau, &self.coupling, &self.init, &self.survival)
    }

    pub fn concurrence_at(&self, tau: f64) -> Result<f64> {
        Ok(concurrence_closed(&self.amplitudes_at(tau)?))
    }

    /// Cross-check through the full density matrix.
    pub fn concurrence_wootters_at(&self, tau: f64) -> Result<f64> {
        concurrence_wootters(&density_matrix(&self.amplitudes_at(tau)?)?)
    }

    pub fn stationary(&self) -> Result<f64> {
        stationary_concurrence(self.coupling.r[0], &self.init)
    }

    /// Large time at which `|E| < ~1e-8` (falls back to `fallback` without a closed form).
    pub fn stationary_time(&self, fallback: f64) -> f64 {
        self.survival.stationary_time().unwrap_or(fallback)
    }

    pub fn series(&self, taus: &[f64], exec: Execution) -> Result<ConcurrenceSeries> {
        let values = exec.try_map(taus, |&t| self.concurrence_at(t))?;
        Ok(ConcurrenceSeries { tau: taus.to_vec(), values, stationary: Some(self.stationary()?) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn system(r: f64, beta: f64, r1: f64, s: f64, phi: f64) -> TwoQubitSystem {
        let env = EnvironmentParams::scaled(1.5e9, r).unwrap();
        TwoQubitSystem::new(env, beta, r1, InitialStateTwoQubit::new(s, phi).unwrap(), 100.0).unwrap()
    }

    #[test]
    fn initial_state_invariants() {
        for (s, phi) in [(-1.0, 0.0), (-0.3, 1.0), (0.0, PI), (0.7, 2.0), (1.0, 0.0)] {
            let init = InitialStateTwoQubit::new(s, phi).unwrap();
            assert!((init.c01.norm_sqr() + init.c02.norm_sqr() - 1.0).abs() < 1e-12);
            let p = init.projections(0.87, (1.0f64 - 0.87 * 0.87).sqrt());
            assert!((p.proj_plus.norm_sqr() + p.proj_minus.norm_sqr() - 1.0).abs() < 1e-12);
            assert!((s * s - (1.0 - init.initial_concurrence().powi(2))).abs() < 1e-12);
        }
        assert!(InitialStateTwoQubit::new(1.5, 0.0).is_err());
    }

    #[test]
    fn initial_amplitudes_are_reproduced() {
        let sys = system(10.0, 2e-9, 0.87, 0.3, 0.4);
        let a = sys.amplitudes_at(0.0).unwrap();
        assert_eq!((a.c1, a.c2), (sys.init.c01, sys.init.c02));
        // Also through the survival amplitude at E(0) = 1.
        let b = amplitudes_from_survival(sys.coupling.r[0], sys.coupling.r[1], &sys.init, sys.survival.eval(0.0));
        assert!((b.c1 - a.c1).norm() < 1e-12 && (b.c2 - a.c2).norm() < 1e-12);
    }

    #[test]
    fn subradiant_state_does_not_decay() {
        let sys = system(0.1, 0.0, FRAC_1_SQRT_2, 0.0, PI);
        for tau in [0.0, 1.0, 10.0, 100.0] {
            assert!((sys.concurrence_at(tau).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn long_time_limit_is_subradiant_component() {
        let sys = system(0.1, 0.0, 0.87, 0.0, 0.0);
        let t = sys.stationary_time(1e4);
        let a = sys.amplitudes_at(t).unwrap();
        let p = sys.init.projections(sys.coupling.r[0], sys.coupling.r[1]);
        assert!((a.c1 - p.proj_minus * sys.coupling.r[1]).norm() < 1e-7);
        assert!((a.c2 + p.proj_minus * sys.coupling.r[0]).norm() < 1e-7);
    }

    #[test]
    fn wrong_arity_is_rejected() {
        let sys = system(0.1, 0.0, 0.87, 0.0, 0.0);
        let three = CouplingProfile::symmetric(3).unwrap();
        assert!(amplitudes_at(1.0, &three, &sys.init, &sys.survival).is_err());
        assert!(amplitudes_at(-1.0, &sys.coupling, &sys.init, &sys.survival).is_err());
    }

    #[test]
    fn closed_concurrence_examples() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        assert_eq!(concurrence_closed(&TwoQubitAmplitudes { c1: one, c2: zero }), 0.0);
        assert!((concurrence_closed(&TwoQubitAmplitudes { c1: h, c2: h }) - 1.0).abs() < 1e-15);
        let a = TwoQubitAmplitudes { c1: Complex64::new(0.6, 0.0), c2: Complex64::new(0.0, 0.48) };
        assert!((concurrence_closed(&a) - 0.576).abs() < 1e-15);
        let w = concurrence_wootters(&density_matrix(&a).unwrap()).unwrap();
        assert!((w - 0.576).abs() < 1e-12);
    }

    #[test]
    fn stationary_examples() {
        for r1 in [0.0, 1.0] {
            for (s, phi) in [(-1.0, 0.0), (0.0, 0.0), (0.5, PI)] {
                let init = InitialStateTwoQubit::new(s, phi).unwrap();
                assert!(stationary_concurrence(r1, &init).unwrap() < 1e-16);
            }
        }
        let init = InitialStateTwoQubit::new(-1.0, 0.0).unwrap();
        let c = stationary_concurrence(0.5, &init).unwrap();
        assert!((c - 3.0 * 3f64.sqrt() / 8.0).abs() < 1e-15);
        let init = InitialStateTwoQubit::new(0.0, PI).unwrap();
        assert!((stationary_concurrence(FRAC_1_SQRT_2, &init).unwrap() - 1.0).abs() < 1e-15);
        // Mirror point r1 = sqrt(3)/2, s = +1.
        let init = InitialStateTwoQubit::new(1.0, 0.0).unwrap();
        let c = stationary_concurrence(3f64.sqrt() / 2.0, &init).unwrap();
        assert!((c - 3.0 * 3f64.sqrt() / 8.0).abs() < 1e-15);
        assert!(stationary_concurrence(1.1, &init).is_err());
    }

    #[test]
    fn stationary_limit_reached_adaptively() {
        for (r, beta) in [(0.1, 0.0), (10.0, 0.0), (0.1, 2e-9), (10.0, 4e-9)] {
            let sys = system(r, beta, 0.87, 0.0, 0.0);
            let t = sys.stationary_time(1e4);
            let c = sys.concurrence_at(t).unwrap();
            assert!((c - sys.stationary().unwrap()).abs() < 1e-6, "{r} {beta}");
        }
    }
}
