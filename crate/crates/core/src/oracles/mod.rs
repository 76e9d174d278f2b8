//! Independent numerical solvers used to validate the closed-form results.
//!
//! [`volterra`] integrates the memory equation for the survival amplitude directly from
//! the kernel; [`discrete`] propagates the microscopic qubit-plus-modes model in the
//! single-excitation sector, including qubits with different velocities.

pub mod discrete;
pub mod volterra;

pub use discrete::{
    discrete_mode_simulate, unequal_velocity_run, DiscreteModeModel, ModeGrid, ShapeFunction, Trajectory,
    DEFAULT_HALF_WIDTH,
};
pub use volterra::{solve_survival, volterra_solve, Quadrature, VolterraConfig, VolterraSolution};
