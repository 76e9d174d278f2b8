use moving_qubits::oracles::{discrete_mode_simulate, unequal_velocity_run, DiscreteModeModel, ModeGrid};
use moving_qubits::{CouplingProfile, EnvironmentParams, Survival};
use num_complex::Complex64;

const T_MAX: f64 = 20.0;
const DT: f64 = 0.005;

fn model(r: f64, betas: [f64; 2], modes: usize) -> (DiscreteModeModel, CouplingProfile, EnvironmentParams) {
    let env = EnvironmentParams::scaled(1.5e9, r).unwrap();
    let coupling = CouplingProfile::two_qubit(0.87).unwrap();
    let grid = ModeGrid::new(modes, 200.0).unwrap();
    let m = DiscreteModeModel::lorentzian(&env, &coupling, &betas, grid, grid.continuum_gamma(T_MAX)).unwrap();
    (m, coupling, env)
}

fn max_deviation(r: f64, beta: f64, modes: usize) -> f64 {
    let (m, coupling, env) = model(r, [beta, beta], modes);
    let init: Vec<Complex64> = coupling.r.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let traj = discrete_mode_simulate(&m, &init, T_MAX, DT).unwrap();
    assert!(traj.max_norm_drift < 1e-10);
    let exact = Survival::build(&env, beta, r * r, T_MAX).unwrap();
    traj.times
        .iter()
        .zip(traj.overlap(&coupling.r))
        .map(|(&t, v)| (v.norm() - exact.eval(t).norm()).abs())
        .fold(0.0, f64::max)
}

#[test]
fn continuum_limit_reproduces_survival_modulus() {
    for (r, beta) in [(0.1, 0.0), (0.1, 2e-9), (0.1, 4e-9), (10.0, 4e-9)] {
        let dev = max_deviation(r, beta, 4096);
        assert!(dev < 0.05, "R = {r}, beta = {beta}: {dev}");
    }
}

#[test]
fn deviation_shrinks_with_mode_count() {
    let devs: Vec<f64> = [512, 1024, 2048, 4096].iter().map(|&k| max_deviation(10.0, 2e-9, k)).collect();
    for w in devs.windows(2) {
        assert!(w[1] <= w[0], "{devs:?}");
    }
}

#[test]
fn subradiant_combination_is_frozen_at_equal_velocity() {
    let (m, coupling, _) = model(10.0, [2e-9, 2e-9], 1024);
    let (r1, r2) = (coupling.r[0], coupling.r[1]);
    let init = [Complex64::new(r2, 0.0), Complex64::new(-r1, 0.0)];
    let traj = discrete_mode_simulate(&m, &init, 10.0, DT).unwrap();
    for v in traj.overlap(&[r2, -r1]) {
        assert!((v.norm() - 1.0).abs() < 0.01);
    }
}

#[test]
fn unequal_velocities_stay_physical() {
    let (m, _, _) = model(10.0, [2e-9, 4e-9], 2048);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let series = unequal_velocity_run(&m, &[Complex64::new(h, 0.0), Complex64::new(h, 0.0)], T_MAX, DT).unwrap();
    assert!((series.values[0] - 1.0).abs() < 1e-12);
    assert!(series.values.iter().all(|c| (0.0..=1.0).contains(c)));
    assert!(series.values.last().unwrap() < &0.9);
}
