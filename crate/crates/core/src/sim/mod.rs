//! Statevector simulation, the operator oracle and exact ground states.

mod eigen;
mod oracle;
mod run;
mod state;

pub use eigen::{ground_state, ground_state_with, EigenOptions, Sector};
pub use oracle::{oracle_plan_state, oracle_product_state, ORACLE_LIMIT};
pub use run::{run_postselected, run_sampled, RunResult, ShotRecord};
pub use state::{expectation, StateVector, SIM_LIMIT, ZERO_BRANCH_TOL};
