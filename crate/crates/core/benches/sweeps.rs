use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use moving_qubits::oracles::{solve_survival, Quadrature, VolterraConfig};
use moving_qubits::sweep::{dynamic_sweep, stationary_sweep, LinearRange};
use moving_qubits::two_qubit::TwoQubitSystem;
use moving_qubits::{tau_grid, EnvironmentParams, Execution, InitialStateTwoQubit};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn stationary(c: &mut Criterion) {
    let r1 = LinearRange::new(0.0, 1.0, 201).unwrap();
    let s = LinearRange::new(-1.0, 1.0, 201).unwrap();
    let mut g = c.benchmark_group("stationary_sweep_201x201");
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| stationary_sweep(&r1, &s, 0.0, exec).unwrap()));
    }
    g.finish();
}

fn dynamic(c: &mut Criterion) {
    let env = EnvironmentParams::scaled(1.5e9, 10.0).unwrap();
    let r1 = LinearRange::new(0.0, 1.0, 21).unwrap();
    let s = LinearRange::new(-1.0, 1.0, 21).unwrap();
    let taus = tau_grid(50.0, 501);
    let mut g = c.benchmark_group("dynamic_sweep_21x21x501");
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| dynamic_sweep(&r1, &s, 0.0, &env, 2e-9, &taus, exec).unwrap()));
    }
    g.finish();
}

fn series(c: &mut Criterion) {
    let env = EnvironmentParams::scaled(1.5e9, 10.0).unwrap();
    let sys = TwoQubitSystem::new(env, 4e-9, 0.87, InitialStateTwoQubit::new(0.0, 0.0).unwrap(), 100.0).unwrap();
    let mut g = c.benchmark_group("concurrence_series");
    for count in [1_000usize, 100_000] {
        let taus = tau_grid(50.0, count);
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, count), &taus, |b, t| b.iter(|| sys.series(t, exec).unwrap()));
        }
    }
    g.finish();
}

fn volterra_batch(c: &mut Criterion) {
    let points: Vec<(f64, f64)> = [0.1, 1.0, 10.0].iter().flat_map(|&r| [0.0, 2e-9, 4e-9].map(|b| (r, b))).collect();
    let cfg = VolterraConfig::new(0.02, 50.0, Quadrature::Gregory).unwrap();
    let mut g = c.benchmark_group("volterra_batch_9");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| {
                exec.try_map(&points, |&(r, beta)| {
                    solve_survival(&EnvironmentParams::scaled(1.5e9, r)?, beta, r * r, &cfg)
                })
                .unwrap()
            })
        });
    }
    g.finish();
}

criterion_group!(benches, stationary, dynamic, series, volterra_batch);
criterion_main!(benches);
