//! Parameter sweeps over the two-qubit initial state and coupling split.

use serde::{Deserialize, Serialize};

use crate::error::{argument, Result};
use crate::exec::Execution;
use crate::params::EnvironmentParams;
use crate::two_qubit::{stationary_concurrence, InitialStateTwoQubit, TwoQubitSystem};

/// Inclusive, equally spaced range `start..=stop` with `count` points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearRange {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl LinearRange {
    pub fn new(start: f64, stop: f64, count: usize) -> Result<Self> {
        if !start.is_finite() || !stop.is_finite() {
            return argument("range bounds must be finite");
        }
        if count == 0 || start > stop || (count == 1 && start != stop) {
            return argument(format!("empty range {start}:{stop}:{count}"));
        }
        Ok(LinearRange { start, stop, count })
    }

    pub fn single(x: f64) -> Self {
        LinearRange { start: x, stop: x, count: 1 }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count).map(|i| if i + 1 == self.count { self.stop } else { self.start + step * i as f64 }).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StationaryPoint {
    pub r1: f64,
    pub s: f64,
    pub phi: f64,
    pub value: f64,
}

fn grid(r1: &LinearRange, s: &LinearRange) -> Vec<(f64, f64)> {
    let svals = s.values();
    r1.values().into_iter().flat_map(|a| svals.iter().map(move |&b| (a, b))).collect()
}

/// Stationary concurrence over the `(r1, s)` grid, `r1` outer.
pub fn stationary_sweep(r1: &LinearRange, s: &LinearRange, phi: f64, exec: Execution) -> Result<Vec<StationaryPoint>> {
    if r1.start < 0.0 || r1.stop > 1.0 {
        return argument("r1 range must lie within [0, 1]");
    }
    if s.start < -1.0 || s.stop > 1.0 {
        return argument("s range must lie within [-1, 1]");
    }
    exec.try_map(&grid(r1, s), |&(r1, s)| {
        let init = InitialStateTwoQubit::new(s, phi)?;
        Ok(StationaryPoint { r1, s, phi, value: stationary_concurrence(r1, &init)? })
    })
}

fn golden_max(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > 1e-13 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        }
    }
    // Boundary maxima are common here; compare against the endpoints explicitly.
    let mid = 0.5 * (lo + hi);
    [mid, lo, hi].into_iter().fold(mid, |best, x| if f(x) > f(best) { x } else { best })
}

/// Maximum of a stationary sweep, refined off-grid by alternating golden-section
/// searches in `r1` and `s` around the best grid point.
pub fn refine_stationary_max(points: &[StationaryPoint]) -> Result<StationaryPoint> {
    let best = points
        .iter()
        .copied()
        .max_by(|a, b| a.value.total_cmp(&b.value))
        .ok_or_else(|| crate::Error::Argument("no sweep points".into()))?;
    let phi = best.phi;
    let value = |r1: f64, s: f64| {
        InitialStateTwoQubit::new(s.clamp(-1.0, 1.0), phi)
            .and_then(|init| stationary_concurrence(r1.clamp(0.0, 1.0), &init))
            .unwrap_or(f64::NEG_INFINITY)
    };
    let dr = grid_spacing(points.iter().map(|p| p.r1).collect());
    let ds = grid_spacing(points.iter().map(|p| p.s).collect());
    let (mut r1, mut s) = (best.r1, best.s);
    for _ in 0..8 {
        r1 = golden_max(&|x| value(x, s), (r1 - dr).max(0.0), (r1 + dr).min(1.0));
        s = golden_max(&|y| value(r1, y), (s - ds).max(-1.0), (s + ds).min(1.0));
    }
    let refined = StationaryPoint { r1, s, phi, value: value(r1, s) };
    Ok(if refined.value >= best.value { refined } else { best })
}

/// Largest gap between distinct coordinates, at least 0.05.
fn grid_spacing(mut vals: Vec<f64>) -> f64 {
    vals.sort_by(|a, b| a.total_cmp(b));
    vals.dedup();
    vals.windows(2).map(|w| w[1] - w[0]).fold(0.05, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DynamicPoint {
    pub r1: f64,
    pub s: f64,
    pub tau: f64,
    pub value: f64,
}

/// Two-qubit concurrence at each `tau` for every `(r1, s)` grid point.
pub fn dynamic_sweep(
    r1: &LinearRange,
    s: &LinearRange,
    phi: f64,
    env: &EnvironmentParams,
    beta: f64,
    taus: &[f64],
    exec: Execution,
) -> Result<Vec<DynamicPoint>> {
    if taus.is_empty() {
        return argument("dynamic sweep needs at least one time");
    }
    let horizon = taus.iter().copied().fold(0.0, f64::max);
    let rows = exec.try_map(&grid(r1, s), |&(r1, s)| {
        let sys = TwoQubitSystem::new(*env, beta, r1, InitialStateTwoQubit::new(s, phi)?, horizon)?;
        taus.iter()
            .map(|&tau| Ok(DynamicPoint { r1, s, tau, value: sys.concurrence_at(tau)? }))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(rows.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn ranges() {
        assert_eq!(LinearRange::new(0.0, 1.0, 3).unwrap().values(), vec![0.0, 0.5, 1.0]);
        assert!(LinearRange::new(0.2, 0.1, 5).is_err());
        assert!(LinearRange::new(0.0, 1.0, 0).is_err());
        assert!(LinearRange::new(0.0, 1.0, 1).is_err());
        assert_eq!(LinearRange::single(0.3).values(), vec![0.3]);
    }

    #[test]
    fn phase_zero_maximum() {
        let pts = stationary_sweep(
            &LinearRange::new(0.0, 1.0, 101).unwrap(),
            &LinearRange::new(-1.0, 1.0, 101).unwrap(),
            0.0,
            Execution::default(),
        )
        .unwrap();
        assert_eq!(pts.len(), 101 * 101);
        let best = refine_stationary_max(&pts).unwrap();
        assert!((best.value - 3.0 * 3f64.sqrt() / 8.0).abs() < 1e-9);
    }

    #[test]
    fn phase_pi_maximum_is_off_grid() {
        let pts = stationary_sweep(
            &LinearRange::new(0.0, 1.0, 21).unwrap(),
            &LinearRange::new(-1.0, 1.0, 21).unwrap(),
            PI,
            Execution::Sequential,
        )
        .unwrap();
        let grid_best = pts.iter().map(|p| p.value).fold(0.0, f64::max);
        assert!(grid_best < 1.0 - 1e-4);
        let best = refine_stationary_max(&pts).unwrap();
        assert!((best.value - 1.0).abs() < 1e-9);
        assert!((best.r1 - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-4);
        assert!(best.s.abs() < 1e-4);
    }

    #[test]
    fn out_of_domain_ranges() {
        let ok = LinearRange::new(0.0, 1.0, 3).unwrap();
        let bad = LinearRange::new(0.0, 2.0, 3).unwrap();
        assert!(stationary_sweep(&bad, &ok, 0.0, Execution::Sequential).is_err());
    }

    #[test]
    fn dynamic_sweep_is_long_format() {
        let env = EnvironmentParams::scaled(1.5e9, 0.1).unwrap();
        let pts = dynamic_sweep(
            &LinearRange::new(0.5, 0.9, 3).unwrap(),
            &LinearRange::single(0.0),
            0.0,
            &env,
            2e-9,
            &[0.0, 1.0, 5.0],
            Execution::default(),
        )
        .unwrap();
        assert_eq!(pts.len(), 9);
        assert!(pts.iter().all(|p| (0.0..=1.0).contains(&p.value)));
        assert_eq!(pts[0].tau, 0.0);
        assert!((pts[0].value - 1.0).abs() < 1e-12);
    }
}
