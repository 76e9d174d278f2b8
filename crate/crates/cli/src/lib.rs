//! Front end for the moving-qubit entanglement library: figure presets, sweeps,
//! stationary tables and graphs, and oracle comparisons, all written as CSV or JSON.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod output;
pub mod presets;
pub mod run;

pub use config::{Oracle, Pair, RunConfig, ScenarioKind};
pub use error::{CliError, Result};
