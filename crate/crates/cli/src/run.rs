//! Subcommand implementations. Every function returns the artifact text; writing it
//! out is left to the caller.

use std::time::Instant;

use moving_qubits::multi_qubit::{
    concurrence_jm, stationary_graph, stationary_table, Scenario, SuperpositionScenario, WernerScenario,
};
use moving_qubits::oracles::{
    discrete_mode_simulate, solve_survival, DiscreteModeModel, ModeGrid, Quadrature, VolterraConfig,
};
use moving_qubits::sweep::{dynamic_sweep, refine_stationary_max, stationary_sweep, LinearRange};
use moving_qubits::two_qubit::TwoQubitSystem;
use moving_qubits::{tau_grid, CouplingProfile, Execution, InitialStateTwoQubit, Survival};
use num_complex::Complex64;
use serde::Serialize;

use crate::config::{Oracle, Pair, RunConfig, ScenarioKind};
use crate::error::{usage, CliError, Result};
use crate::output::{label, num, Csv};
use crate::presets::{preset, PresetKind, Vary};

fn check_unit(values: &[f64]) -> Result<()> {
    match values.iter().find(|v| !(0.0..=1.0).contains(*v)) {
        Some(v) => Err(CliError::Contract(format!("concurrence {v} outside [0, 1]"))),
        None => Ok(()),
    }
}

/// Concurrence of the configured pair at every `tau` for one velocity.
pub fn curve(cfg: &RunConfig, beta: f64, taus: &[f64], exec: Execution) -> Result<Vec<f64>> {
    cfg.validate()?;
    let env = cfg.env()?;
    let values = match cfg.scenario {
        ScenarioKind::TwoQubit | ScenarioKind::OracleCompare => {
            let sys = TwoQubitSystem::new(env, beta, cfg.r1, cfg.init()?, cfg.tau_max)?;
            sys.series(taus, exec)?.values
        }
        ScenarioKind::Werner => {
            let w = WernerScenario::new(cfg.n, env, beta)?;
            exec.try_map(taus, |&t| w.pair_concurrence_at(t))?
        }
        ScenarioKind::Superposition | ScenarioKind::OneExcitation => {
            let sc = SuperpositionScenario::new(cfg.n, env, beta, cfg.init()?)?;
            let one = cfg.scenario == ScenarioKind::OneExcitation;
            let n = cfg.n;
            exec.try_map(taus, |&t| match cfg.pair() {
                // With a single excited qubit every excited-ground pair is alike.
                Pair::Lm if one => sc.jl_at(t),
                Pair::Jl => sc.jl_at(t),
                Pair::Jm => sc.jm_at(t),
                Pair::Km => sc.km_at(t),
                Pair::Lm => sc.amplitudes_at(t).and_then(|a| concurrence_jm(n, a.c2, a.c3)),
            })?
        }
    };
    check_unit(&values)?;
    Ok(values)
}

fn curve_label(cfg: &RunConfig, beta: f64, vary: Vary, several_betas: bool) -> String {
    let main = match vary {
        Vary::Beta => format!("beta={}", label(beta)),
        Vary::R1 => format!("r1={}", label(cfg.r1)),
        Vary::N => format!("n={}", cfg.n),
    };
    if several_betas && vary != Vary::Beta {
        format!("{main} beta={}", label(beta))
    } else {
        main
    }
}

/// Time series for a list of configurations sharing one `tau` grid.
pub fn curves_csv(title: &[(&str, String)], configs: &[RunConfig], vary: Vary, exec: Execution) -> Result<String> {
    let first = configs.first().ok_or_else(|| CliError::Usage("no configurations to run".into()))?;
    let taus = tau_grid(first.tau_max, first.tau_steps);
    let mut header = vec!["tau".to_string()];
    let mut columns = Vec::new();
    for c in configs {
        if (c.tau_max, c.tau_steps) != (first.tau_max, first.tau_steps) {
            return usage("all curves of one table need the same tau grid");
        }
        for &b in &c.betas {
            header.push(curve_label(c, b, vary, c.betas.len() > 1));
            columns.push(curve(c, b, &taus, exec)?);
        }
    }
    let mut csv = Csv::new(header);
    for (k, v) in title {
        csv.meta(k, v.clone());
    }
    for (i, c) in configs.iter().enumerate() {
        csv.meta(&format!("config[{i}]"), c.to_json());
    }
    for (i, t) in taus.iter().enumerate() {
        let mut row = vec![num(*t)];
        row.extend(columns.iter().map(|col| num(col[i])));
        csv.row(row);
    }
    Ok(csv.render())
}

/// Long-format stationary surface over `(r1, s)`.
pub fn stationary_surface_csv(r1: &LinearRange, s: &LinearRange, phi: f64, exec: Execution) -> Result<String> {
    let points = stationary_sweep(r1, s, phi, exec)?;
    let grid_best = points.iter().copied().max_by(|a, b| a.value.total_cmp(&b.value)).expect("non-empty grid");
    let refined = refine_stationary_max(&points)?;
    let mut csv = Csv::new(["r1", "s", "phi", "C_s"]);
    csv.meta("sweep", "stationary")
        .meta("r1", format!("{}:{}:{}", r1.start, r1.stop, r1.count))
        .meta("s", format!("{}:{}:{}", s.start, s.stop, s.count))
        .meta("phi", num(phi))
        .meta("grid max", format!("{} at r1={}, s={}", num(grid_best.value), num(grid_best.r1), num(grid_best.s)))
        .meta("refined max", format!("{} at r1={}, s={}", num(refined.value), num(refined.r1), num(refined.s)));
    for p in &points {
        csv.row(vec![num(p.r1), num(p.s), num(p.phi), num(p.value)]);
    }
    check_unit(&points.iter().map(|p| p.value).collect::<Vec<_>>())?;
    Ok(csv.render())
}

/// Long-format two-qubit concurrence over `(r1, s, beta, tau)`.
pub fn dynamic_surface_csv(cfg: &RunConfig, r1: &LinearRange, s: &LinearRange, exec: Execution) -> Result<String> {
    cfg.validate()?;
    let taus = tau_grid(cfg.tau_max, cfg.tau_steps);
    let env = cfg.env()?;
    let mut csv = Csv::new(["r1", "s", "beta", "tau", "C"]);
    csv.meta("sweep", "dynamic")
        .meta("r1", format!("{}:{}:{}", r1.start, r1.stop, r1.count))
        .meta("s", format!("{}:{}:{}", s.start, s.stop, s.count))
        .meta("config", cfg.to_json());
    for &beta in &cfg.betas {
        let points = dynamic_sweep(r1, s, cfg.phi, &env, beta, &taus, exec)?;
        check_unit(&points.iter().map(|p| p.value).collect::<Vec<_>>())?;
        for p in points {
            csv.row(vec![num(p.r1), num(p.s), num(beta), num(p.tau), num(p.value)]);
        }
    }
    Ok(csv.render())
}

pub fn table_csv(
    n_values: &[usize],
    scenario: Scenario,
    init: &InitialStateTwoQubit,
    exec: Execution,
) -> Result<String> {
    let rows = stationary_table(n_values, scenario, init, exec)?;
    let mut header = vec!["n"];
    header.extend(scenario.columns());
    let mut csv = Csv::new(header);
    csv.meta("table", "stationary pairwise concurrence")
        .meta("scenario", serde_json::to_string(&scenario)?)
        .meta("s", num(init.s))
        .meta("phi", num(init.phi));
    for r in rows {
        let mut cells = vec![r.n.to_string()];
        cells.extend(r.cells.iter().map(|c| c.map(num).unwrap_or_default()));
        csv.row(cells);
    }
    Ok(csv.render())
}

pub fn graph_csv(
    title: &[(&str, String)],
    n: usize,
    scenario: Scenario,
    init: &InitialStateTwoQubit,
) -> Result<String> {
    let g = stationary_graph(n, scenario, init)?;
    let mut csv = Csv::new(["a", "b", "weight"]);
    for (k, v) in title {
        csv.meta(k, v.clone());
    }
    let classes: Vec<String> = g.weight_classes().into_iter().map(num).collect();
    csv.meta("graph", "stationary pairwise concurrence")
        .meta("scenario", serde_json::to_string(&scenario)?)
        .meta("n", n.to_string())
        .meta(
            "nodes",
            match scenario {
                Scenario::TwoExcitationSuperposition => "0 = j, 1 = l (sharing the excitation), 2.. = m (ground)",
                Scenario::OneExcitation => "0 = excited qubit, 1.. = ground qubits",
            },
        )
        .meta("weight classes", classes.join(" "));
    for e in &g.edges {
        csv.row(vec![e.a.to_string(), e.b.to_string(), num(e.weight)]);
    }
    Ok(csv.render())
}

/// Artifact for a figure preset.
pub fn run_preset(id: &str, exec: Execution) -> Result<String> {
    let p = preset(id)?;
    let title = [("preset", p.id.to_string()), ("caption", p.caption.to_string())];
    match p.kind {
        PresetKind::Curves { configs, vary } => curves_csv(&title, &configs, vary, exec),
        PresetKind::Surface { phi, grid } => {
            let r1 = LinearRange::new(0.0, 1.0, grid)?;
            let s = LinearRange::new(-1.0, 1.0, grid)?;
            let body = stationary_surface_csv(&r1, &s, phi, exec)?;
            Ok(format!("# preset: {}\n# caption: {}\n{body}", p.id, p.caption))
        }
        PresetKind::Graph { scenario, n } => graph_csv(&title, n, scenario, &InitialStateTwoQubit::new(0.0, 0.0)?),
    }
}

/// Error metrics of a numerical oracle against the closed form.
#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub oracle: Oracle,
    pub max_abs_error: f64,
    pub rms_error: f64,
    /// Wall time of the oracle runs in seconds.
    pub runtime: f64,
    pub samples: usize,
    pub tolerance: f64,
    pub passed: bool,
    pub config: serde_json::Value,
}

impl Oracle {
    pub fn tolerance(self) -> f64 {
        match self {
            Oracle::Volterra => 1e-4,
            Oracle::Discrete => 5e-2,
        }
    }
}

/// Compares the chosen oracle with the closed form, on the oracle's own step grid, for
/// every velocity in the config. The Volterra solution is compared as a complex number,
/// the mode simulation through the modulus of the superradiant overlap.
pub fn oracle_compare(cfg: &RunConfig) -> Result<OracleReport> {
    cfg.validate()?;
    if !matches!(cfg.scenario, ScenarioKind::TwoQubit | ScenarioKind::OracleCompare) {
        return usage("oracle comparison runs on two-qubit parameters");
    }
    let env = cfg.env()?;
    let r2 = cfg.r * cfg.r;
    let mut errors = Vec::new();
    let mut runtime = 0.0;
    for &beta in &cfg.betas {
        let exact = Survival::build(&env, beta, r2, cfg.tau_max)?;
        let start = Instant::now();
        match cfg.oracle {
            Oracle::Volterra => {
                let sol = solve_survival(
                    &env,
                    beta,
                    r2,
                    &VolterraConfig::new(cfg.oracle_dt, cfg.tau_max, Quadrature::Gregory)?,
                )?;
                runtime += start.elapsed().as_secs_f64();
                errors.extend(sol.times().iter().zip(&sol.values).map(|(&t, v)| (v - exact.eval(t)).norm()));
            }
            Oracle::Discrete => {
                let grid = ModeGrid::new(cfg.modes, cfg.half_width)?;
                if cfg.tau_max >= grid.recurrence_time() {
                    return usage(format!(
                        "tau_max {} exceeds the revival time {:.3} of a {}-mode grid; raise modes or lower tau_max",
                        cfg.tau_max,
                        grid.recurrence_time(),
                        cfg.modes
                    ));
                }
                let coupling = CouplingProfile::two_qubit(cfg.r1)?;
                let model = DiscreteModeModel::lorentzian(
                    &env,
                    &coupling,
                    &[beta, beta],
                    grid,
                    grid.continuum_gamma(cfg.tau_max),
                )?;
                let init: Vec<Complex64> = coupling.r.iter().map(|&x| Complex64::new(x, 0.0)).collect();
                let traj = discrete_mode_simulate(&model, &init, cfg.tau_max, cfg.oracle_dt)?;
                runtime += start.elapsed().as_secs_f64();
                errors.extend(
                    traj.times
                        .iter()
                        .zip(traj.overlap(&coupling.r))
                        .map(|(&t, v)| (v.norm() - exact.eval(t).norm()).abs()),
                );
            }
        }
    }
    let max_abs_error = errors.iter().copied().fold(0.0, f64::max);
    let rms_error = (errors.iter().map(|e| e * e).sum::<f64>() / errors.len() as f64).sqrt();
    let tolerance = cfg.oracle.tolerance();
    Ok(OracleReport {
        oracle: cfg.oracle,
        max_abs_error,
        rms_error,
        runtime,
        samples: errors.len(),
        tolerance,
        passed: max_abs_error < tolerance,
        config: serde_json::from_str(&cfg.to_json())?,
    })
}
