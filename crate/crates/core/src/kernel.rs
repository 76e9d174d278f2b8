//! Reservoir correlation function for equal-velocity qubits in the continuum limit.

use num_complex::Complex64;

use crate::error::{argument, Result};
use crate::params::{validate_beta, EnvironmentParams};

/// `F(dt) = (W^2 / 2) e^{-dtau} cosh[beta (1 + i omega0/lambda) dtau]` with `dtau = lambda dt`.
///
/// The value carries the physical units of `W^2`.
pub fn correlation_kernel(tau_diff: f64, env: &EnvironmentParams, beta: f64) -> Result<Complex64> {
    if !(tau_diff >= 0.0) {
        return argument(format!("time difference must be non-negative, got {tau_diff}"));
    }
    validate_beta(beta)?;
    Ok(LorentzianKernel::new(env, beta).physical(tau_diff))
}

/// Pre-resolved kernel, cheap to evaluate on a grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzianKernel {
    half_w2: f64,
    lambda2: f64,
    shift: Complex64,
}

impl LorentzianKernel {
    pub fn new(env: &EnvironmentParams, beta: f64) -> Self {
        LorentzianKernel {
            half_w2: 0.5 * env.w * env.w,
            lambda2: env.lambda * env.lambda,
            shift: env.moving_shift(beta),
        }
    }

    /// Kernel in units of `W^2`.
    pub fn physical(&self, tau_diff: f64) -> Complex64 {
        (self.shift * tau_diff).cosh() * (self.half_w2 * (-tau_diff).exp())
    }

    /// Kernel divided by `lambda^2`, the form that appears once the memory integral is
    /// written in scaled time.
    pub fn scaled(&self, tau_diff: f64) -> Complex64 {
        self.physical(tau_diff) / self.lambda2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_difference_is_half_w_squared() {
        let env = EnvironmentParams::new(1.0, 1.5e9, 0.7, 0.7).unwrap();
        for beta in [0.0, 2e-9, 4e-9] {
            let k = correlation_kernel(0.0, &env, beta).unwrap();
            assert!((k - Complex64::new(0.245, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn motionless_kernel_is_exponential() {
        let env = EnvironmentParams::new(1.0, 1.5e9, 1.0, 1.0).unwrap();
        let k = correlation_kernel(1.0, &env, 0.0).unwrap();
        assert!((k.re - 0.5 * (-1.0f64).exp()).abs() < 1e-16);
        assert!((k.re - 0.18394).abs() < 1e-5);
        assert_eq!(k.im, 0.0);
    }

    #[test]
    fn moving_kernel_matches_high_precision_value() {
        // 50-digit mpmath evaluation of 0.5 e^{-1} cosh(2e-9 (1 + 1.5e9 i)).
        let expected = Complex64::new(-0.182_098_943_206_646_44, 5.191_514_970_317_339e-11);
        let env = EnvironmentParams::new(1.0, 1.5e9, 1.0, 1.0).unwrap();
        let k = correlation_kernel(1.0, &env, 2e-9).unwrap();
        assert!((k.re - expected.re).abs() < 1e-15, "{k}");
        assert!((k.im - expected.im).abs() < 1e-19, "{k}");
    }

    #[test]
    fn negative_difference_is_rejected() {
        let env = EnvironmentParams::scaled(1.0, 1.0).unwrap();
        assert!(correlation_kernel(-1e-3, &env, 0.0).is_err());
        assert!(correlation_kernel(f64::NAN, &env, 0.0).is_err());
    }

    #[test]
    fn scaled_divides_by_lambda_squared() {
        let env = EnvironmentParams::new(2.0, 3e9, 1.0, 0.5).unwrap();
        let k = LorentzianKernel::new(&env, 2e-9);
        let d = k.physical(0.3) / 4.0 - k.scaled(0.3);
        assert!(d.norm() < 1e-16);
    }
}
