use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use moving_qubits::multi_qubit::Scenario;
use moving_qubits::sweep::LinearRange;
use moving_qubits::{Execution, InitialStateTwoQubit};
use moving_qubits_cli::error::{usage, CliError, Result};
use moving_qubits_cli::output::emit;
use moving_qubits_cli::presets::{preset, PresetKind, PRESET_IDS};
use moving_qubits_cli::run;
use moving_qubits_cli::{Oracle, Pair, RunConfig, ScenarioKind};

#[derive(Parser)]
#[command(name = "mqe", version, about = "Entanglement dynamics of qubits moving in a lossy cavity")]
struct Cli {
    /// Evaluate on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Data of one published figure panel.
    Preset {
        /// Preset id such as fig4a; `list` prints all ids.
        id: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stationary or time-resolved two-qubit concurrence over an (r1, s) grid.
    Sweep(SweepArgs),
    /// Stationary pairwise concurrences for a range of system sizes.
    StationaryTable(TableArgs),
    /// Stationary pairwise concurrences as a weighted edge list.
    Graph(GraphArgs),
    /// Closed form against a numerical oracle; JSON report.
    OracleCompare(OracleArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepMode {
    Stationary,
    Dynamic,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableScenario {
    Superposition,
    OneExcitation,
}

impl From<TableScenario> for Scenario {
    fn from(t: TableScenario) -> Self {
        match t {
            TableScenario::Superposition => Scenario::TwoExcitationSuperposition,
            TableScenario::OneExcitation => Scenario::OneExcitation,
        }
    }
}

/// Flags mirroring the fields of the JSON run configuration; flags win over `--config`.
#[derive(Args, Default)]
struct ConfigArgs {
    /// JSON run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    scenario: Option<ScenarioKind>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<f64>,
    #[arg(long)]
    phi: Option<f64>,
    #[arg(long = "R")]
    r: Option<f64>,
    /// Comma-separated velocity ratios.
    #[arg(long, value_delimiter = ',')]
    betas: Option<Vec<f64>>,
    #[arg(long)]
    omega0_over_lambda: Option<f64>,
    #[arg(long)]
    tau_max: Option<f64>,
    #[arg(long)]
    tau_steps: Option<usize>,
    #[arg(long, value_enum)]
    pair: Option<Pair>,
    #[arg(long)]
    oracle_dt: Option<f64>,
    #[arg(long)]
    modes: Option<usize>,
    #[arg(long)]
    half_width: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl ConfigArgs {
    fn resolve(&self, base: RunConfig) -> Result<RunConfig> {
        let mut c = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => base,
        };
        macro_rules! set {
            ($($f:ident),*) => { $( if let Some(v) = self.$f.clone() { c.$f = v; } )* };
        }
        set!(scenario, n, r1, s, phi, r, betas, omega0_over_lambda, tau_max, tau_steps, oracle_dt, modes, half_width);
        if self.pair.is_some() {
            c.pair = self.pair;
        }
        if self.out.is_some() {
            c.out = self.out.clone();
        }
        c.validate()?;
        Ok(c)
    }
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum, default_value = "stationary")]
    mode: SweepMode,
    /// start:stop:count
    #[arg(long, default_value = "0:1:101", allow_hyphen_values = true)]
    r1_range: String,
    /// start:stop:count
    #[arg(long, default_value = "-1:1:101", allow_hyphen_values = true)]
    s_range: String,
    #[command(flatten)]
    cfg: ConfigArgs,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, value_enum, default_value = "superposition")]
    scenario: TableScenario,
    /// first:last, inclusive
    #[arg(long, default_value = "2:12")]
    n_range: String,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    s: f64,
    #[arg(long, default_value_t = 0.0)]
    phi: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long, value_enum, default_value = "superposition")]
    scenario: TableScenario,
    #[arg(long, default_value_t = 6)]
    n: usize,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    s: f64,
    #[arg(long, default_value_t = 0.0)]
    phi: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, value_enum, default_value = "volterra")]
    oracle: Oracle,
    /// Take the physical parameters from a two-qubit figure preset.
    #[arg(long)]
    preset: Option<String>,
    #[command(flatten)]
    cfg: ConfigArgs,
}

fn parse_range(text: &str) -> Result<LinearRange> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || CliError::Usage(format!("range '{text}' is not start:stop:count"));
    match parts.as_slice() {
        [a, b, n] => {
            let (a, b) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
            let n: usize = n.parse().map_err(|_| bad())?;
            if a == b && n == 1 {
                Ok(LinearRange::single(a))
            } else {
                LinearRange::new(a, b, n).map_err(|e| CliError::Usage(e.to_string()))
            }
        }
        _ => Err(bad()),
    }
}

fn parse_n_range(text: &str) -> Result<Vec<usize>> {
    let bad = || CliError::Usage(format!("n range '{text}' is not first:last"));
    let (a, b) = text.split_once(':').ok_or_else(bad)?;
    let (a, b): (usize, usize) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
    if a > b {
        return usage(format!("n range {a}:{b} is empty"));
    }
    Ok((a..=b).collect())
}

fn preset_base(id: &str) -> Result<RunConfig> {
    match preset(id)?.kind {
        PresetKind::Curves { configs, .. } if configs[0].scenario == ScenarioKind::TwoQubit => Ok(configs[0].clone()),
        _ => usage(format!("preset {id} does not describe a two-qubit run")),
    }
}

fn execute(cli: Cli) -> Result<()> {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::default() };
    match cli.cmd {
        Command::Preset { id, out } => {
            if id == "list" {
                return emit(&(PRESET_IDS.join("\n") + "\n"), out.as_deref());
            }
            emit(&run::run_preset(&id, exec)?, out.as_deref())
        }
        Command::Sweep(a) => {
            let (r1, s) = (parse_range(&a.r1_range)?, parse_range(&a.s_range)?);
            let cfg = a.cfg.resolve(RunConfig::new(ScenarioKind::TwoQubit))?;
            let text = match a.mode {
                SweepMode::Stationary => run::stationary_surface_csv(&r1, &s, cfg.phi, exec)?,
                SweepMode::Dynamic => run::dynamic_surface_csv(&cfg, &r1, &s, exec)?,
            };
            emit(&text, cfg.out.as_deref())
        }
        Command::StationaryTable(a) => {
            let init = InitialStateTwoQubit::new(a.s, a.phi)?;
            emit(&run::table_csv(&parse_n_range(&a.n_range)?, a.scenario.into(), &init, exec)?, a.out.as_deref())
        }
        Command::Graph(a) => {
            let init = InitialStateTwoQubit::new(a.s, a.phi)?;
            emit(&run::graph_csv(&[], a.n, a.scenario.into(), &init)?, a.out.as_deref())
        }
        Command::OracleCompare(a) => {
            let base = match &a.preset {
                Some(id) => preset_base(id)?,
                None => RunConfig::new(ScenarioKind::OracleCompare),
            };
            let mut cfg = a.cfg.resolve(base)?;
            cfg.oracle = a.oracle;
            match run::oracle_compare(&cfg) {
                Ok(report) => {
                    emit(&(serde_json::to_string_pretty(&report)? + "\n"), cfg.out.as_deref())?;
                    if report.passed {
                        Ok(())
                    } else {
                        Err(CliError::Contract(format!(
                            "max_abs_error {:e} exceeds {:e}",
                            report.max_abs_error, report.tolerance
                        )))
                    }
                }
                Err(e @ CliError::Usage(_)) => Err(e),
                Err(e) => {
                    let failure = serde_json::json!({
                        "error": e.to_string(),
                        "config": serde_json::from_str::<serde_json::Value>(&cfg.to_json())?,
                    });
                    emit(&(serde_json::to_string_pretty(&failure)? + "\n"), cfg.out.as_deref())?;
                    Err(e)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mqe: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
