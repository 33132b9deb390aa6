//! Seeded Monte Carlo simulation of meeting walks, coalescing walks, the
//! voter model and the immortal process.
//!
//! Every random move is a pure function of `(trial seed, step, walk id)`; see
//! [`crate::rng`].

mod coupling;
mod estimate;
mod process;
mod sample;
mod voter;

pub use coupling::{coupled_run, CoupledSample};
pub use estimate::{estimate, run_trial, run_trials, SimKind};
pub use process::{
    simulate_coalescence, simulate_coalescence_to, simulate_immortal, simulate_meeting, ImmortalStop,
};
pub use sample::{default_cap, pairwise_sum, Estimate, SimSample, Z95};
pub use voter::simulate_voter;

pub(crate) use process::lazy_move;
