//! Product-integration solver for `dE/dtau = -a * int_0^tau k(tau - s) E(s) ds`, `E(0) = 1`.
//!
//! Integrating once in time turns the problem into the second-kind equation
//! `E(tau) = 1 - a * int_0^tau K(tau - s) E(s) ds` with `K(u) = int_0^u k`. `K` is built
//! on the grid from the analytic kernel by per-interval Gauss-Legendre quadrature, and
//! `K(0) = 0` makes every step explicit.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{argument, Error, Result};
use crate::kernel::LorentzianKernel;
use crate::params::{validate_beta, EnvironmentParams};

const MAX_STEPS: f64 = 1e7;

const GL_NODES: [f64; 5] =
    [0.0, -0.538_469_310_105_683_1, 0.538_469_310_105_683_1, -0.906_179_845_938_664, 0.906_179_845_938_664];
const GL_WEIGHTS: [f64; 5] = [
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
    0.236_926_885_056_189_1,
];

/// Quadrature rule for the history integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Quadrature {
    /// Trapezoid product integration, second order.
    Trapezoid,
    /// Fourth-order Simpson-type rule (Gregory end corrections).
    Gregory,
}

impl Quadrature {
    pub fn from_order(order: u8) -> Result<Self> {
        match order {
            1 => Ok(Quadrature::Trapezoid),
            2 => Ok(Quadrature::Gregory),
            _ => argument(format!("quadrature order must be 1 or 2, got {order}")),
        }
    }

    /// Convergence order in the step size.
    pub fn convergence_order(self) -> i32 {
        match self {
            Quadrature::Trapezoid => 2,
            Quadrature::Gregory => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VolterraConfig {
    pub dt: f64,
    pub t_max: f64,
    pub quadrature: Quadrature,
}

impl VolterraConfig {
    pub fn new(dt: f64, t_max: f64, quadrature: Quadrature) -> Result<Self> {
        let cfg = VolterraConfig { dt, t_max, quadrature };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return argument(format!("dt must be positive, got {}", self.dt));
        }
        if !(self.t_max >= 0.0) || !self.t_max.is_finite() {
            return argument(format!("t_max must be non-negative, got {}", self.t_max));
        }
        if self.t_max / self.dt > MAX_STEPS {
            return argument(format!("t_max / dt exceeds {MAX_STEPS:e}"));
        }
        Ok(())
    }

    fn steps(&self) -> usize {
        (self.t_max / self.dt - 1e-9).ceil().max(0.0) as usize
    }
}

/// `E` sampled at `tau_i = i * dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct VolterraSolution {
    pub dt: f64,
    pub values: Vec<Complex64>,
    /// Richardson estimate of the discretization error from a companion solve at `2 dt`.
    pub error_estimate: f64,
}

impl VolterraSolution {
    pub fn times(&self) -> Vec<f64> {
        (0..self.values.len()).map(|i| i as f64 * self.dt).collect()
    }

    pub fn horizon(&self) -> f64 {
        (self.values.len() - 1) as f64 * self.dt
    }

    /// Linear interpolation on the grid; `NaN` outside `[0, horizon]`.
    pub fn at(&self, tau: f64) -> Complex64 {
        let x = tau / self.dt;
        let last = self.values.len() - 1;
        if !(x >= 0.0) || x > last as f64 + 1e-9 {
            return Complex64::new(f64::NAN, f64::NAN);
        }
        let i = (x.floor() as usize).min(last);
        if i == last {
            return self.values[last];
        }
        let f = x - i as f64;
        self.values[i] * (1.0 - f) + self.values[i + 1] * f
    }
}

fn gauss(a: f64, b: f64, f: &impl Fn(f64) -> Complex64) -> Complex64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    GL_NODES.iter().zip(GL_WEIGHTS.iter()).map(|(x, w)| f(mid + half * x) * (w * half)).sum()
}

/// `K(i dt)` for `i = 0..=steps`.
fn integrated_kernel(kernel: &impl Fn(f64) -> Complex64, dt: f64, steps: usize) -> Result<Vec<Complex64>> {
    let mut out = Vec::with_capacity(steps + 1);
    let mut acc = Complex64::new(0.0, 0.0);
    out.push(acc);
    let k0 = kernel(0.0);
    if !k0.re.is_finite() || !k0.im.is_finite() {
        return Err(Error::NonFiniteKernel { tau: 0.0 });
    }
    for i in 1..=steps {
        let a = (i - 1) as f64 * dt;
        let b = i as f64 * dt;
        let piece = gauss(a, b, kernel);
        if !piece.re.is_finite() || !piece.im.is_finite() {
            return Err(Error::NonFiniteKernel { tau: b });
        }
        acc += piece;
        out.push(acc);
    }
    Ok(out)
}

/// `sum_i w_i K[m - i] E[i]` over `[0, m dt]` with fourth-order weights.
///
/// From `m = 5` on this is the Gregory end-corrected trapezoid. Its weights do not depend
/// on the parity of `m`; the plain Simpson / 3/8 alternation does, and that excites a
/// parasitic mode which grows without bound on strongly oscillating kernels. The first
/// few steps use Simpson or 3/8 panels. `e` holds `E[0..m]`; the `E[m]` weight multiplies
/// `K(0) = 0` and is skipped.
fn gregory_history(big_k: &[Complex64], e: &[Complex64], m: usize, dt: f64) -> Complex64 {
    let term = |i: usize, w: f64| if i == m { Complex64::new(0.0, 0.0) } else { big_k[m - i] * e[i] * (w * dt) };
    match m {
        2 => term(0, 1.0 / 3.0) + term(1, 4.0 / 3.0),
        3 => term(0, 3.0 / 8.0) + term(1, 9.0 / 8.0) + term(2, 9.0 / 8.0),
        4 => term(0, 1.0 / 3.0) + term(1, 4.0 / 3.0) + term(2, 2.0 / 3.0) + term(3, 4.0 / 3.0),
        _ => {
            const END: [f64; 3] = [3.0 / 8.0, 7.0 / 6.0, 23.0 / 24.0];
            let mut sum: Complex64 = (3..m - 2).map(|i| big_k[m - i] * e[i]).sum::<Complex64>() * dt;
            for (j, w) in END.iter().enumerate() {
                sum += term(j, *w) + term(m - j, *w);
            }
            sum
        }
    }
}

fn march(
    alpha2: f64,
    kernel: &impl Fn(f64) -> Complex64,
    big_k: &[Complex64],
    stride: usize,
    dt: f64,
    steps: usize,
    quadrature: Quadrature,
) -> Vec<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let kk: Vec<Complex64> = (0..=steps).map(|i| big_k[i * stride]).collect();
    let mut e = Vec::with_capacity(steps + 1);
    e.push(one);
    if steps == 0 {
        return e;
    }
    match quadrature {
        Quadrature::Trapezoid => {
            for m in 1..=steps {
                let mut hist = kk[m] * e[0] * 0.5;
                for i in 1..m {
                    hist += kk[m - i] * e[i];
                }
                // The E[m] weight multiplies K(0) = 0.
                e.push(one - hist * (alpha2 * dt));
            }
        }
        Quadrature::Gregory => {
            // First step: E linear on [0, dt], integrand K(dt - s) E(s) by Gauss-Legendre,
            // with K at off-grid points from its own Gauss integral.
            let big_k_at = |u: f64| if u <= 0.0 { Complex64::new(0.0, 0.0) } else { gauss(0.0, u, kernel) };
            let i0 = gauss(0.0, dt, &|s| big_k_at(dt - s) * (1.0 - s / dt));
            let i1 = gauss(0.0, dt, &|s| big_k_at(dt - s) * (s / dt));
            let e1 = (one - i0 * alpha2) / (one + i1 * alpha2);
            e.push(e1);
            for m in 2..=steps {
                let hist = gregory_history(&kk, &e, m, dt);
                e.push(one - hist * alpha2);
            }
        }
    }
    e
}

/// Solves the memory equation on `[0, t_max]` for scalar coupling `effective_alpha2` and a
/// kernel given in scaled time.
pub fn volterra_solve<K>(effective_alpha2: f64, kernel: K, cfg: &VolterraConfig) -> Result<VolterraSolution>
where
    K: Fn(f64) -> Complex64,
{
    cfg.validate()?;
    if !effective_alpha2.is_finite() {
        return argument(format!("coupling must be finite, got {effective_alpha2}"));
    }
    let steps = cfg.steps();
    let big_k = integrated_kernel(&kernel, cfg.dt, steps)?;
    let fine = march(effective_alpha2, &kernel, &big_k, 1, cfg.dt, steps, cfg.quadrature);

    let coarse_steps = steps / 2;
    let error_estimate = if coarse_steps >= 2 {
        let coarse = march(effective_alpha2, &kernel, &big_k, 2, 2.0 * cfg.dt, coarse_steps, cfg.quadrature);
        let denom = f64::from(2u32.pow(cfg.quadrature.convergence_order() as u32)) - 1.0;
        coarse.iter().enumerate().map(|(i, c)| (fine[2 * i] - c).norm()).fold(0.0, f64::max) / denom
    } else {
        0.0
    };

    if let Some((i, _)) = fine.iter().enumerate().find(|(_, v)| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::Integrator { tau: i as f64 * cfg.dt, reason: "non-finite survival amplitude".into() });
    }
    Ok(VolterraSolution { dt: cfg.dt, values: fine, error_estimate })
}

/// Survival amplitude for the Lorentzian kernel with coupling `effective_r2`.
///
/// The product `alpha^2 * kernel / lambda^2` is `(effective_r2 / 2) e^{-u} cosh(...)`, so
/// the solve is carried out with a unit-amplitude kernel and `effective_r2` as coupling.
pub fn solve_survival(
    env: &EnvironmentParams,
    beta: f64,
    effective_r2: f64,
    cfg: &VolterraConfig,
) -> Result<VolterraSolution> {
    validate_beta(beta)?;
    if !(effective_r2 >= 0.0) {
        return argument(format!("effective R^2 must be non-negative, got {effective_r2}"));
    }
    let unit = EnvironmentParams { w: env.lambda, ..*env };
    let k = LorentzianKernel::new(&unit, beta);
    volterra_solve(effective_r2, |u| k.scaled(u), cfg)
}
