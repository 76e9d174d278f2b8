//! Roots of the characteristic cubic `q^3 + 2 q^2 + (y+ y- + R2/2) q + R2/2 = 0`.
//!
//! The coefficients are complex as soon as the qubits move (`beta omega0 / lambda` is of
//! order one), so the roots come from complex Cardano followed by Newton polishing, with a
//! companion-matrix eigenvalue solve as fallback.

use nalgebra::Matrix3;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{argument, Result};
use crate::params::{validate_beta, EnvironmentParams};

const RESIDUAL_TOL: f64 = 1e-10;
const NEWTON_STEPS: usize = 3;

/// Three roots of a monic cubic, ordered by real part (descending), ties by imaginary
/// part (descending).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubicRoots {
    pub q1: Complex64,
    pub q2: Complex64,
    pub q3: Complex64,
    pub min_separation: f64,
}

impl CubicRoots {
    fn from_unsorted(mut roots: [Complex64; 3]) -> Self {
        roots.sort_by(|a, b| {
            let scale = 1.0 + a.norm().max(b.norm());
            if (a.re - b.re).abs() <= 1e-13 * scale {
                b.im.total_cmp(&a.im)
            } else {
                b.re.total_cmp(&a.re)
            }
        });
        let [q1, q2, q3] = roots;
        let min_separation = (q1 - q2).norm().min((q1 - q3).norm()).min((q2 - q3).norm());
        CubicRoots { q1, q2, q3, min_separation }
    }

    pub fn as_array(&self) -> [Complex64; 3] {
        [self.q1, self.q2, self.q3]
    }

    /// Largest real part among the roots (the slowest decay channel).
    pub fn max_real(&self) -> f64 {
        self.q1.re
    }
}

/// Coefficients `(a, b, c)` of the monic cubic `q^3 + a q^2 + b q + c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonicCubic {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

impl MonicCubic {
    /// The survival-amplitude cubic for velocity `beta` and coupling `effective_r2`
    /// (`R^2` for two qubits, `n R^2` for the `n`-qubit Werner problem).
    pub fn survival(env: &EnvironmentParams, beta: f64, effective_r2: f64) -> Self {
        let yy = env.y_plus(beta) * env.y_minus(beta);
        let half = Complex64::new(0.5 * effective_r2, 0.0);
        MonicCubic { a: Complex64::new(2.0, 0.0), b: yy + half, c: half }
    }

    pub fn eval(&self, q: Complex64) -> Complex64 {
        ((q + self.a) * q + self.b) * q + self.c
    }

    fn derivative(&self, q: Complex64) -> Complex64 {
        (q * 3.0 + self.a * 2.0) * q + self.b
    }

    pub fn residual_ok(&self, q: Complex64) -> bool {
        self.eval(q).norm() < RESIDUAL_TOL * (1.0 + q.norm().powi(3))
    }

    /// Cardano, Newton polish, eigenvalue fallback.
    pub fn roots(&self) -> CubicRoots {
        let mut roots = cardano(self);
        for q in roots.iter_mut() {
            *q = self.polish(*q);
        }
        if !roots.iter().all(|&q| self.residual_ok(q)) || !self.vieta_ok(&roots) {
            roots = companion_eigenvalues(self);
            for q in roots.iter_mut() {
                *q = self.polish(*q);
            }
        }
        CubicRoots::from_unsorted(roots)
    }

    fn vieta_ok(&self, roots: &[Complex64; 3]) -> bool {
        let sum = roots[0] + roots[1] + roots[2];
        let scale = 1.0 + roots.iter().map(|q| q.norm()).fold(0.0, f64::max);
        (sum + self.a).norm() < RESIDUAL_TOL * scale
    }

    /// Newton iterations, keeping a step only while it reduces the residual.
    fn polish(&self, mut q: Complex64) -> Complex64 {
        let mut res = self.eval(q).norm();
        for _ in 0..NEWTON_STEPS {
            let d = self.derivative(q);
            if d.norm() == 0.0 || res == 0.0 {
                break;
            }
            let next = q - self.eval(q) / d;
            let next_res = self.eval(next).norm();
            if !(next_res < res) {
                break;
            }
            q = next;
            res = next_res;
        }
        q
    }
}

fn cardano(p: &MonicCubic) -> [Complex64; 3] {
    // q = t - a/3 reduces to t^3 + pp t + qq = 0.
    let shift = p.a / 3.0;
    let pp = p.b - p.a * p.a / 3.0;
    let qq = p.a * p.a * p.a * (2.0 / 27.0) - p.a * p.b / 3.0 + p.c;
    let disc = (qq * qq / 4.0 + pp * pp * pp / 27.0).sqrt();
    // Pick the branch with the larger modulus to avoid cancellation.
    let u3 = {
        let plus = -qq / 2.0 + disc;
        let minus = -qq / 2.0 - disc;
        if plus.norm() >= minus.norm() {
            plus
        } else {
            minus
        }
    };
    let omega = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
    if u3.norm() == 0.0 {
        // pp = qq = 0: triple root.
        return [-shift; 3];
    }
    let u = u3.powf(1.0 / 3.0);
    let mut out = [Complex64::new(0.0, 0.0); 3];
    let mut rot = Complex64::new(1.0, 0.0);
    for slot in out.iter_mut() {
        let uk = u * rot;
        *slot = uk - pp / (uk * 3.0) - shift;
        rot *= omega;
    }
    out
}

fn companion_eigenvalues(p: &MonicCubic) -> [Complex64; 3] {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let m = Matrix3::new(-p.a, -p.b, -p.c, one, zero, zero, zero, one, zero);
    match m.schur().eigenvalues() {
        Some(ev) => [ev[0], ev[1], ev[2]],
        None => cardano(p),
    }
}

/// Roots of the survival cubic with `R^2/2` replaced by `effective_r2 / 2`.
pub fn solve_cubic(env: &EnvironmentParams, beta: f64, effective_r2: f64) -> Result<CubicRoots> {
    if !(effective_r2 >= 0.0) || !effective_r2.is_finite() {
        return argument(format!("effective R^2 must be non-negative, got {effective_r2}"));
    }
    validate_beta(beta)?;
    Ok(MonicCubic::survival(env, beta, effective_r2).roots())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn uncoupled_motionless_roots() {
        let env = EnvironmentParams::scaled(1.5e9, 0.0).unwrap();
        let r = solve_cubic(&env, 0.0, 0.0).unwrap();
        assert!((r.q1 - c(0.0, 0.0)).norm() < 1e-12);
        assert!((r.q2 - c(-1.0, 0.0)).norm() < 1e-7);
        assert!((r.q3 - c(-1.0, 0.0)).norm() < 1e-7);
        assert!(r.min_separation < 1e-6);
    }

    #[test]
    fn bad_cavity_motionless_roots() {
        // (q + 1)(q^2 + q + R^2/2) with R = 0.1; quadratic formula values.
        let env = EnvironmentParams::scaled(1.5e9, 0.1).unwrap();
        let r = solve_cubic(&env, 0.0, 0.01).unwrap();
        assert!((r.q1 - c(-0.005_025_253_169_416_733, 0.0)).norm() < 1e-12);
        assert!((r.q2 - c(-0.994_974_746_830_583_3, 0.0)).norm() < 1e-12);
        assert!((r.q3 - c(-1.0, 0.0)).norm() < 1e-12);
        let p = MonicCubic::survival(&env, 0.0, 0.01);
        for q in r.as_array() {
            assert!(p.eval(q).norm() < 1e-12);
        }
    }

    #[test]
    fn negative_coupling_is_rejected() {
        let env = EnvironmentParams::scaled(1.5e9, 0.1).unwrap();
        assert!(solve_cubic(&env, 0.0, -1e-3).is_err());
    }

    #[test]
    fn ordering_is_deterministic_for_conjugate_pairs() {
        let env = EnvironmentParams::scaled(1.5e9, 10.0).unwrap();
        let r = solve_cubic(&env, 0.0, 100.0).unwrap();
        assert!(r.q1.im > 0.0 && r.q2.im < 0.0);
        assert!((r.q1 - r.q2.conj()).norm() < 1e-12);
        assert!((r.q3 - c(-1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn fallback_handles_triple_root() {
        // (q + 1)^3
        let p = MonicCubic { a: c(3.0, 0.0), b: c(3.0, 0.0), c: c(1.0, 0.0) };
        let r = p.roots();
        for q in r.as_array() {
            assert!((q + 1.0).norm() < 1e-5);
        }
    }

    proptest! {
        #[test]
        fn residual_and_vieta_on_parameter_grid(
            r in 0.01f64..20.0,
            beta in 0.0f64..1e-8,
            w in 1e8f64..1e10,
        ) {
            let env = EnvironmentParams::scaled(w, r).unwrap();
            let r2 = r * r;
            let roots = solve_cubic(&env, beta, r2).unwrap();
            let p = MonicCubic::survival(&env, beta, r2);
            for q in roots.as_array() {
                prop_assert!(p.eval(q).norm() < 1e-10 * (1.0 + q.norm().powi(3)));
            }
            let sum = roots.q1 + roots.q2 + roots.q3;
            prop_assert!((sum + 2.0).norm() < 1e-10);
            let prod = roots.q1 * roots.q2 * roots.q3;
            prop_assert!((prod + p.c).norm() < 1e-10 * (1.0 + p.c.norm()));
        }

        #[test]
        fn motionless_has_root_at_minus_one(r in 0.01f64..20.0) {
            let env = EnvironmentParams::scaled(1.5e9, r).unwrap();
            let roots = solve_cubic(&env, 0.0, r * r).unwrap();
            let best = roots.as_array().iter().map(|q| (q + 1.0).norm()).fold(f64::MAX, f64::min);
            prop_assert!(best < 1e-10);
        }
    }
}
