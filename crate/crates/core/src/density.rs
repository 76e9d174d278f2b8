//! Two-qubit density matrices, Wootters concurrence and partial traces in the
//! single-excitation sector.
//!
//! Basis ordering is `{|e,e>, |e,g>, |g,e>, |g,g>}`; for `n` qubits the index bit of
//! qubit 0 is the most significant and a `0` bit means excited.

use nalgebra::{DMatrix, Matrix4};
use num_complex::Complex64;

use crate::error::{Error, Result};

const NORM_TOL: f64 = 1e-9;
const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const PSD_TOL: f64 = 1e-10;
const CLAMP_TOL: f64 = 1e-9;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn state_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::State(msg.into()))
}

/// Clamps a concurrence-like value to `[0, 1]`; overshoot beyond 1e-9 is an error.
pub(crate) fn clamp_unit(value: f64) -> Result<f64> {
    if !value.is_finite() || !(-CLAMP_TOL..=1.0 + CLAMP_TOL).contains(&value) {
        return state_err(format!("concurrence {value} outside [0, 1]"));
    }
    Ok(value.clamp(0.0, 1.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix4(pub Matrix4<Complex64>);

impl DensityMatrix4 {
    /// Checks Hermiticity, unit trace and positivity.
    pub fn new(m: Matrix4<Complex64>) -> Result<Self> {
        let rho = DensityMatrix4(m);
        rho.validate()?;
        Ok(rho)
    }

    /// `rho` for `c1 |e,g> + c2 |g,e>` mixed with `|g,g>` carrying the remaining weight.
    pub fn from_amplitudes(c1: Complex64, c2: Complex64) -> Result<Self> {
        let p1 = c1.norm_sqr();
        let p2 = c2.norm_sqr();
        let mut ground = 1.0 - p1 - p2;
        if ground < -NORM_TOL {
            return state_err(format!("amplitude norm {} exceeds one", p1 + p2));
        }
        if ground < 0.0 {
            ground = 0.0;
        }
        let mut m = Matrix4::from_element(zero());
        m[(1, 1)] = Complex64::new(p1, 0.0);
        m[(1, 2)] = c1 * c2.conj();
        m[(2, 1)] = c1.conj() * c2;
        m[(2, 2)] = Complex64::new(p2, 0.0);
        m[(3, 3)] = Complex64::new(ground, 0.0);
        Ok(DensityMatrix4(m))
    }

    pub fn validate(&self) -> Result<()> {
        let m = &self.0;
        let herm = (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if herm > HERMITIAN_TOL {
            return state_err(format!("density matrix not Hermitian (deviation {herm:.3e})"));
        }
        let tr = m.trace();
        if (tr - 1.0).norm() > TRACE_TOL {
            return state_err(format!("density matrix trace {tr} != 1"));
        }
        let min_ev = hermitian_part(m).symmetric_eigenvalues().iter().fold(f64::INFINITY, |a, &b| a.min(b));
        if min_ev < -PSD_TOL {
            return state_err(format!("density matrix has negative eigenvalue {min_ev:.3e}"));
        }
        Ok(())
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    /// `(sigma_y x sigma_y) rho^* (sigma_y x sigma_y)`.
    pub fn spin_flipped(&self) -> Matrix4<Complex64> {
        let yy = spin_flip();
        yy * self.0.map(|z| z.conj()) * yy
    }
}

fn hermitian_part(m: &Matrix4<Complex64>) -> Matrix4<Complex64> {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

/// `sigma_y x sigma_y`, real in the computational basis.
pub fn spin_flip() -> Matrix4<Complex64> {
    let mut yy = Matrix4::from_element(zero());
    yy[(0, 3)] = Complex64::new(-1.0, 0.0);
    yy[(1, 2)] = Complex64::new(1.0, 0.0);
    yy[(2, 1)] = Complex64::new(1.0, 0.0);
    yy[(3, 0)] = Complex64::new(-1.0, 0.0);
    yy
}

/// Wootters concurrence `max(0, l1 - l2 - l3 - l4)` where `l_i^2` are the eigenvalues of
/// `rho * rho~` in decreasing order.
///
/// The `l_i` are obtained as singular values of `sqrt(rho) Y sqrt(rho)^*`, which avoids
/// taking square roots of nearly vanishing eigenvalues.
pub fn concurrence_wootters(rho: &DensityMatrix4) -> Result<f64> {
    rho.validate()?;
    let h = hermitian_part(&rho.0);
    let eig = h.symmetric_eigen();
    let mut sqrt_ev = eig.eigenvalues;
    for v in sqrt_ev.iter_mut() {
        if *v < -PSD_TOL {
            return state_err(format!("negative eigenvalue {v:.3e}"));
        }
        *v = v.max(0.0).sqrt();
    }
    let vecs = &eig.eigenvectors;
    let diag = Matrix4::from_diagonal(&sqrt_ev.map(|x| Complex64::new(x, 0.0)));
    let sqrt_rho = vecs * diag * vecs.adjoint();
    let b = sqrt_rho * spin_flip() * sqrt_rho.map(|z| z.conj());
    let mut l: Vec<f64> = b.singular_values().iter().copied().collect();
    l.sort_by(|a, b| b.total_cmp(a));
    clamp_unit((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

/// Full `2^n x 2^n` density matrix of the qubits for the single-excitation amplitudes
/// `amps[i]` of `|e_i>`, with the ground state `|G>` carrying the missing weight.
pub fn single_excitation_density(amps: &[Complex64]) -> Result<DMatrix<Complex64>> {
    let n = amps.len();
    if n == 0 || n > 12 {
        return Err(Error::Argument(format!("full density supported for 1..=12 qubits, got {n}")));
    }
    let dim = 1usize << n;
    let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    if norm > 1.0 + NORM_TOL {
        return state_err(format!("amplitude norm {norm} exceeds one"));
    }
    // |e_i> has every bit set except qubit i.
    let index = |i: usize| (dim - 1) & !(1usize << (n - 1 - i));
    let mut m = DMatrix::from_element(dim, dim, zero());
    for (i, a) in amps.iter().enumerate() {
        for (j, b) in amps.iter().enumerate() {
            m[(index(i), index(j))] = a * b.conj();
        }
    }
    m[(dim - 1, dim - 1)] = Complex64::new((1.0 - norm).max(0.0), 0.0);
    Ok(m)
}

/// Reduced state of qubits `a` and `b` (in that order) by explicit partial trace.
pub fn partial_trace_pair(rho: &DMatrix<Complex64>, n: usize, a: usize, b: usize) -> Result<DensityMatrix4> {
    if a == b || a >= n || b >= n || rho.nrows() != 1 << n || rho.ncols() != 1 << n {
        return Err(Error::Argument(format!("bad partial trace request ({a}, {b}) of {n} qubits")));
    }
    let bit = |idx: usize, q: usize| (idx >> (n - 1 - q)) & 1;
    let mut out = Matrix4::from_element(zero());
    let dim = 1usize << n;
    for r in 0..dim {
        for c in 0..dim {
            let same_env = (0..n).filter(|&q| q != a && q != b).all(|q| bit(r, q) == bit(c, q));
            if !same_env {
                continue;
            }
            let rr = 2 * bit(r, a) + bit(r, b);
            let cc = 2 * bit(c, a) + bit(c, b);
            out[(rr, cc)] += rho[(r, c)];
        }
    }
    DensityMatrix4::new(out)
}

/// Closed-form pair reduction of a single-excitation state: only the two selected
/// amplitudes survive in the excitation block.
pub fn pair_density(amps: &[Complex64], a: usize, b: usize) -> Result<DensityMatrix4> {
    if a == b || a >= amps.len() || b >= amps.len() {
        return Err(Error::Argument(format!("bad qubit pair ({a}, {b})")));
    }
    DensityMatrix4::from_amplitudes(amps[a], amps[b])
}
